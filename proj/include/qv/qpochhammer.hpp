#pragma once

// q-shifted factorials.
//
//   (x;q)_n   = prod_{k=0}^{n-1} (1 - x q^k)
//   (x;q)_inf = prod_{k>=0}     (1 - x q^k)
//
// The infinite product is truncated at the first K with
// |x| |q|^K / (1-|q|) < tol_tail/2; the dropped tail then multiplies the
// result by 1 + O(tol_tail), so the relative error is below tol_tail.

#include <optional>
#include <span>

#include "qv/qcontext.hpp"

namespace qv {

Cx qpoch_finite(Cx x, Cx q, std::size_t n);

Cx qpoch_inf(Cx x, const QContext& ctx);

// (x1,...,xr;q)_n shorthand, n = nullopt meaning the infinite product.
// An empty list gives 1.
Cx qpoch_multi(std::span<const Cx> xs, const QContext& ctx,
               std::optional<std::size_t> n = std::nullopt);

inline Cx qpoch_multi(std::initializer_list<Cx> xs, const QContext& ctx,
                      std::optional<std::size_t> n = std::nullopt) {
    return qpoch_multi(std::span<const Cx>(xs.begin(), xs.size()), ctx, n);
}

} // namespace qv
