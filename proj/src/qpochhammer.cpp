#include "qv/qpochhammer.hpp"

#include <cmath>
#include <stdexcept>

#include "qv/errors.hpp"

namespace qv {

Cx qpoch_finite(Cx x, Cx q, std::size_t n) {
    if (!is_finite(x) || !is_finite(q))
        throw std::invalid_argument("qpoch_finite: non-finite input");
    Cx prod(1.0, 0.0);
    Cx xq = x;
    for (std::size_t k = 0; k < n; ++k) {
        prod *= (Cx(1.0, 0.0) - xq);
        xq *= q;
    }
    if (!is_finite(prod)) throw no_convergence("qpoch_finite: overflow");
    return prod;
}

Cx qpoch_inf(Cx x, const QContext& ctx) {
    if (!is_finite(x)) throw std::invalid_argument("qpoch_inf: non-finite input");
    const double aq = std::abs(ctx.q);
    if (aq >= 1.0) throw std::domain_error("qpoch_inf: |q| must be < 1");
    const double ax = std::abs(x);
    if (ax == 0.0) return Cx(1.0, 0.0);

    // smallest K with |x| |q|^K / (1-|q|) < tol_tail/2
    std::size_t K = 0;
    double bound = ax / (1.0 - aq);
    const double target = ctx.tol_tail / 2.0;
    while (bound >= target) {
        bound *= aq;
        ++K;
        if (K > ctx.max_terms)
            throw no_convergence("qpoch_inf: truncation point exceeds max_terms");
    }

    Cx prod(1.0, 0.0);
    Cx xq = x;
    for (std::size_t k = 0; k < K; ++k) {
        prod *= (Cx(1.0, 0.0) - xq);
        xq *= ctx.q;
    }
    if (!is_finite(prod)) throw no_convergence("qpoch_inf: overflow");
    return prod;
}

Cx qpoch_multi(std::span<const Cx> xs, const QContext& ctx, std::optional<std::size_t> n) {
    Cx prod(1.0, 0.0);
    for (Cx x : xs)
        prod *= n ? qpoch_finite(x, ctx.q, *n) : qpoch_inf(x, ctx);
    return prod;
}

} // namespace qv
