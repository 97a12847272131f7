#include "qv/qhyper.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "qv/errors.hpp"
#include "qv/qpochhammer.hpp"

namespace qv {

namespace {

constexpr double kPoleTol = 1e-13;

// Shared summation driver.  step(k) returns the multiplicative factor taking
// term k to term k+1 (and may throw pole_error).  Terminating sums add the
// terms k = 0..*terminate and stop; open sums stop once the geometric tail
// bound drops below tol_tail * |partial sum|.
Cx sum_by_ratio(const std::function<Cx(std::size_t)>& step, const QContext& ctx,
                std::optional<std::size_t> terminate, const char* what) {
    Cx sum(0.0, 0.0);
    Cx term(1.0, 0.0);
    int below_one = 0;
    for (std::size_t k = 0;; ++k) {
        sum += term;
        if (!is_finite(sum)) throw divergence_error(std::string(what) + ": sum overflow");
        if (terminate && k == *terminate) return sum;
        if (k >= ctx.max_terms)
            throw no_convergence(std::string(what) + ": max_terms exceeded");
        const Cx factor = step(k);
        const double rho = std::abs(factor);
        term *= factor;
        if (!terminate) {
            if (rho < 1.0) {
                if (++below_one >= 3) {
                    const double tail = std::abs(term) * rho / (1.0 - rho);
                    if (tail <= ctx.tol_tail * std::abs(sum + term)) return sum + term;
                }
            } else {
                below_one = 0;
            }
        }
    }
}

} // namespace

Cx eval_phi(const PhiSpec& spec, const QContext& ctx) {
    for (Cx a : spec.upper)
        if (!is_finite(a)) throw std::invalid_argument("eval_phi: non-finite upper parameter");
    for (Cx b : spec.lower)
        if (!is_finite(b)) throw std::invalid_argument("eval_phi: non-finite lower parameter");
    if (!is_finite(spec.z)) throw std::invalid_argument("eval_phi: non-finite argument");

    const long r = static_cast<long>(spec.upper.size());
    const long s = static_cast<long>(spec.lower.size());
    const long e = 1 + s - r;

    if (spec.terminating_at) {
        const Cx qinv_n = qpow_int(ctx.q, -static_cast<long>(*spec.terminating_at));
        bool found = false;
        for (Cx a : spec.upper) found = found || (a == qinv_n);
        if (!found)
            throw std::invalid_argument(
                "eval_phi: terminating_at set but no upper parameter equals q^-n");
    } else if (spec.z != Cx(0.0, 0.0)) {
        if (e < 0)
            throw divergence_error("eval_phi: r > s+1 without termination");
        if (e == 0 && std::abs(spec.z) >= 1.0)
            throw divergence_error("eval_phi: |z| >= 1 with r = s+1 and no termination");
    }

    Cx qk(1.0, 0.0); // q^k, advanced incrementally
    auto step = [&](std::size_t) {
        Cx num(1.0, 0.0);
        for (Cx a : spec.upper) num *= (Cx(1.0, 0.0) - a * qk);
        Cx den = Cx(1.0, 0.0) - ctx.q * qk;
        for (Cx b : spec.lower) {
            const Cx fac = Cx(1.0, 0.0) - b * qk;
            if (std::abs(fac) < kPoleTol)
                throw pole_error("eval_phi: lower parameter on the q^-m pole lattice");
            den *= fac;
        }
        Cx factor = num / den * spec.z;
        if (e != 0) factor *= qpow_int(-qk, e);
        qk *= ctx.q;
        return factor;
    };
    return sum_by_ratio(step, ctx, spec.terminating_at, "eval_phi");
}

Cx eval_w(const WSpec& spec, const QContext& ctx) {
    const Cx sa = std::sqrt(spec.a1);
    PhiSpec phi;
    phi.upper = {spec.a1, ctx.q * sa, -ctx.q * sa};
    phi.lower = {sa, -sa};
    for (Cx x : spec.extras) {
        if (x == Cx(0.0, 0.0))
            throw std::invalid_argument("eval_w: zero parameter has no q a1/x partner");
        phi.upper.push_back(x);
        phi.lower.push_back(ctx.q * spec.a1 / x);
    }
    phi.z = spec.z;
    return eval_phi(phi, ctx);
}

Cx sum_vwp_quadratic(Cx a1, const std::vector<Cx>& extras, Cx z, const QContext& ctx) {
    if (!is_finite(a1) || !is_finite(z))
        throw std::invalid_argument("sum_vwp_quadratic: non-finite input");
    std::vector<Cx> lowers;
    for (Cx x : extras) {
        if (x == Cx(0.0, 0.0)) throw std::invalid_argument("sum_vwp_quadratic: zero parameter");
        lowers.push_back(ctx.q * a1 / x);
    }
    Cx qk(1.0, 0.0);
    Cx q2k(1.0, 0.0); // q^{2k}
    auto step = [&](std::size_t) {
        Cx num = (Cx(1.0, 0.0) - a1 * q2k * ctx.q * ctx.q) * (Cx(1.0, 0.0) - a1 * qk);
        for (Cx x : extras) num *= (Cx(1.0, 0.0) - x * qk);
        Cx den = (Cx(1.0, 0.0) - a1 * q2k) * (Cx(1.0, 0.0) - ctx.q * qk);
        for (Cx b : lowers) {
            const Cx fac = Cx(1.0, 0.0) - b * qk;
            if (std::abs(fac) < kPoleTol)
                throw pole_error("sum_vwp_quadratic: parameter on the q^-m pole lattice");
            den *= fac;
        }
        // (-z)^{n+1}/(-z)^n = -z and q^{C(n+1,2)-C(n,2)} = q^n
        const Cx factor = num / den * (-z) * qk;
        qk *= ctx.q;
        q2k *= ctx.q * ctx.q;
        return factor;
    };
    return sum_by_ratio(step, ctx, std::nullopt, "sum_vwp_quadratic");
}

Cx closed_form_q_gauss(Cx a, Cx b, Cx c, const QContext& ctx) {
    if (a == Cx(0.0, 0.0) || b == Cx(0.0, 0.0))
        throw std::invalid_argument("closed_form_q_gauss: a and b must be nonzero");
    const Cx den = qpoch_inf(c, ctx) * qpoch_inf(c / (a * b), ctx);
    if (den == Cx(0.0, 0.0))
        throw pole_error("closed_form_q_gauss: denominator product vanishes");
    return qpoch_inf(c / a, ctx) * qpoch_inf(c / b, ctx) / den;
}

Cx closed_form_q_binomial(Cx a, Cx z, const QContext& ctx) {
    if (std::abs(z) >= 1.0)
        throw divergence_error("closed_form_q_binomial: |z| must be < 1");
    return qpoch_inf(a * z, ctx) / qpoch_inf(z, ctx);
}

Cx sum_with_geometric_tail(const std::function<Cx(std::size_t)>& term_at,
                           const QContext& ctx, const char* what) {
    Cx sum(0.0, 0.0);
    double prev = 0.0;
    int below_one = 0;
    for (std::size_t n = 0;; ++n) {
        if (n >= ctx.max_terms)
            throw no_convergence(std::string(what) + ": max_terms exceeded");
        const Cx t = term_at(n);
        sum += t;
        if (!is_finite(sum)) throw divergence_error(std::string(what) + ": sum overflow");
        const double at = std::abs(t);
        if (n > 0) {
            if (prev > 0.0) {
                const double rho = at / prev;
                if (rho < 1.0) {
                    if (++below_one >= 3 &&
                        at * rho / (1.0 - rho) <= ctx.tol_tail * std::abs(sum))
                        return sum;
                } else {
                    below_one = 0;
                }
            } else if (at == 0.0) {
                // a vanished recurrence coefficient zeroes every later term
                if (++below_one >= 3) return sum;
            } else {
                below_one = 0;
            }
        }
        prev = at;
    }
}

} // namespace qv
