#include "qv/formal/pseries.hpp"

#include <stdexcept>
#include <utility>

namespace qv::formal {

Rat rat(long num, long den) {
    if (den == 0) throw std::invalid_argument("rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("rat_from_string: cannot parse '" + s + "'");
    if (r.get_den() == 0) throw std::invalid_argument("rat_from_string: zero denominator");
    r.canonicalize();
    return r;
}

PSeries::PSeries(std::size_t order) : coeffs_(order) {
    if (order == 0) throw std::invalid_argument("PSeries: order must be positive");
}

PSeries PSeries::one(std::size_t order) { return constant(rat(1), order); }

PSeries PSeries::constant(const Rat& c, std::size_t order) {
    PSeries s(order);
    s.coeffs_[0] = c;
    return s;
}

PSeries PSeries::monomial(const Rat& c, std::size_t exponent, std::size_t order) {
    PSeries s(order);
    if (exponent < order) s.coeffs_[exponent] = c;
    return s;
}

PSeries PSeries::geometric(const Rat& r, std::size_t step, std::size_t order) {
    if (step == 0) throw std::invalid_argument("PSeries::geometric: step must be >= 1");
    PSeries s(order);
    Rat pw(1);
    for (std::size_t e = 0; e < order; e += step) {
        s.coeffs_[e] = pw;
        pw *= r;
    }
    return s;
}

const Rat& PSeries::coeff(std::size_t e) const {
    if (e >= order()) throw std::out_of_range("PSeries::coeff: exponent beyond order");
    return coeffs_[e];
}

void PSeries::set_coeff(std::size_t e, const Rat& v) {
    if (e >= order()) throw std::out_of_range("PSeries::set_coeff: exponent beyond order");
    coeffs_[e] = v;
}

bool PSeries::is_zero() const { return first_nonzero() == order(); }

std::size_t PSeries::first_nonzero() const {
    for (std::size_t e = 0; e < coeffs_.size(); ++e)
        if (coeffs_[e] != 0) return e;
    return coeffs_.size();
}

void PSeries::require_same_order(const PSeries& o) const {
    if (order() != o.order())
        throw std::invalid_argument("PSeries: mixed-order arithmetic");
}

PSeries& PSeries::operator+=(const PSeries& o) {
    require_same_order(o);
    for (std::size_t e = 0; e < coeffs_.size(); ++e) coeffs_[e] += o.coeffs_[e];
    return *this;
}

PSeries& PSeries::operator-=(const PSeries& o) {
    require_same_order(o);
    for (std::size_t e = 0; e < coeffs_.size(); ++e) coeffs_[e] -= o.coeffs_[e];
    return *this;
}

PSeries PSeries::operator+(const PSeries& o) const {
    PSeries s = *this;
    s += o;
    return s;
}

PSeries PSeries::operator-(const PSeries& o) const {
    PSeries s = *this;
    s -= o;
    return s;
}

void PSeries::add_mul(const PSeries& a, const PSeries& b) {
    require_same_order(a);
    require_same_order(b);
    const std::size_t K = coeffs_.size();
    const std::size_t bmin = b.first_nonzero();
    if (bmin == K) return;
    Rat t;
    for (std::size_t i = 0; i + bmin < K; ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = bmin; i + j < K; ++j) {
            if (b.coeffs_[j] == 0) continue;
            t = a.coeffs_[i] * b.coeffs_[j];
            coeffs_[i + j] += t;
        }
    }
}

PSeries PSeries::operator*(const PSeries& o) const {
    PSeries s(order());
    s.add_mul(*this, o);
    return s;
}

PSeries& PSeries::operator*=(const PSeries& o) {
    *this = *this * o;
    return *this;
}

PSeries& PSeries::scale(const Rat& c) {
    for (auto& v : coeffs_) v *= c;
    return *this;
}

PSeries PSeries::shifted(std::size_t s) const {
    PSeries out(order());
    for (std::size_t e = 0; e + s < order(); ++e) out.coeffs_[e + s] = coeffs_[e];
    return out;
}

void PSeries::mul_one_minus(const Rat& r, std::size_t e) {
    if (e == 0) {
        scale(Rat(1) - r);
        return;
    }
    if (e >= order()) return;
    Rat t;
    for (std::size_t i = coeffs_.size(); i-- > e;) {
        t = r * coeffs_[i - e];
        coeffs_[i] -= t;
    }
}

PSeries PSeries::reciprocal() const {
    if (coeffs_[0] == 0)
        throw std::domain_error("PSeries::reciprocal: constant term is zero");
    const std::size_t K = order();
    PSeries out(K);
    const Rat inv0 = Rat(1) / coeffs_[0];
    out.coeffs_[0] = inv0;
    Rat acc, t;
    for (std::size_t n = 1; n < K; ++n) {
        acc = 0;
        for (std::size_t j = 1; j <= n; ++j) {
            if (coeffs_[j] == 0) continue;
            t = coeffs_[j] * out.coeffs_[n - j];
            acc += t;
        }
        out.coeffs_[n] = -inv0 * acc;
    }
    return out;
}

bool PSeries::operator==(const PSeries& o) const {
    if (order() != o.order()) return false;
    for (std::size_t e = 0; e < coeffs_.size(); ++e)
        if (coeffs_[e] != o.coeffs_[e]) return false;
    return true;
}

double PSeries::eval(double p) const {
    double acc = 0.0;
    for (std::size_t e = coeffs_.size(); e-- > 0;) acc = acc * p + coeffs_[e].get_d();
    return acc;
}

std::string PSeries::coeff_string(std::size_t e) const { return coeff(e).get_str(); }

} // namespace qv::formal
