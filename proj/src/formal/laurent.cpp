#include "qv/formal/laurent.hpp"

#include <stdexcept>

namespace qv::formal {

LaurentPSeries::LaurentPSeries(long degree_bound, std::size_t order)
    : bound_(degree_bound), order_(order) {
    if (degree_bound < 0)
        throw std::invalid_argument("LaurentPSeries: negative degree bound");
    terms_.assign(2 * static_cast<std::size_t>(degree_bound) + 1, PSeries(order));
}

LaurentPSeries LaurentPSeries::unit(long degree_bound, std::size_t order) {
    LaurentPSeries s(degree_bound, order);
    s.term(0) = PSeries::one(order);
    return s;
}

const PSeries& LaurentPSeries::term(long d) const {
    if (d < -bound_ || d > bound_)
        throw std::out_of_range("LaurentPSeries::term: degree beyond bound");
    return terms_[static_cast<std::size_t>(d + bound_)];
}

PSeries& LaurentPSeries::term(long d) {
    if (d < -bound_ || d > bound_)
        throw std::out_of_range("LaurentPSeries::term: degree beyond bound");
    return terms_[static_cast<std::size_t>(d + bound_)];
}

LaurentPSeries LaurentPSeries::conjugated() const {
    LaurentPSeries out(bound_, order_);
    for (long d = -bound_; d <= bound_; ++d) out.term(-d) = term(d);
    return out;
}

LaurentPSeries LaurentPSeries::operator*(const LaurentPSeries& o) const {
    if (bound_ != o.bound_ || order_ != o.order_)
        throw std::invalid_argument("LaurentPSeries: mixed bounds or orders");
    LaurentPSeries out(bound_, order_);
    // Cache the first nonzero p-grade per degree to skip empty pairings.
    std::vector<std::size_t> fa(terms_.size()), fb(terms_.size());
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        fa[i] = terms_[i].first_nonzero();
        fb[i] = o.terms_[i].first_nonzero();
    }
    for (long d1 = -bound_; d1 <= bound_; ++d1) {
        const std::size_t i1 = static_cast<std::size_t>(d1 + bound_);
        if (fa[i1] >= order_) continue;
        for (long d2 = -bound_; d2 <= bound_; ++d2) {
            const long d = d1 + d2;
            if (d < -bound_ || d > bound_) continue;
            const std::size_t i2 = static_cast<std::size_t>(d2 + bound_);
            if (fb[i2] >= order_ || fa[i1] + fb[i2] >= order_) continue;
            out.term(d).add_mul(terms_[i1], o.terms_[i2]);
        }
    }
    return out;
}

LaurentPSeries& LaurentPSeries::operator*=(const LaurentPSeries& o) {
    *this = *this * o;
    return *this;
}

bool LaurentPSeries::operator==(const LaurentPSeries& o) const {
    if (bound_ != o.bound_ || order_ != o.order_) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (!(terms_[i] == o.terms_[i])) return false;
    return true;
}

} // namespace qv::formal
