#pragma once

// Basic hypergeometric series
//
//   r_phi_s(a1..ar; b1..bs; q, z)
//     = sum_k (a1..ar;q)_k / ((q,b1..bs;q)_k) * [(-1)^k q^C(k,2)]^(1+s-r) * z^k
//
// and the very-well-poised shorthand
//
//   r+1_W_r(a1; a4..a_{r+1}; q, z)
//     = r+1_phi_r(a1, q*sqrt(a1), -q*sqrt(a1), a4, ...;
//                 sqrt(a1), -sqrt(a1), q*a1/a4, ...; q, z).
//
// Truncation: once the term-ratio modulus has stayed below some rho < 1 for
// three consecutive steps, the tail is bounded by |term| * rho / (1 - rho)
// and summation stops when that bound drops under tol_tail * |partial sum|.

#include <functional>
#include <optional>
#include <vector>

#include "qv/qcontext.hpp"

namespace qv {

struct PhiSpec {
    std::vector<Cx> upper;
    std::vector<Cx> lower;
    Cx z;
    // When set to n, exactly the terms k = 0..n are summed.  Requires one
    // upper parameter to equal qpow_int(q, -n) bit for bit.
    std::optional<std::size_t> terminating_at;
};

struct WSpec {
    Cx a1;
    std::vector<Cx> extras; // a4 .. a_{r+1}
    Cx z;
};

Cx eval_phi(const PhiSpec& spec, const QContext& ctx);

// Expands the WSpec into its defining PhiSpec (principal square root) and
// evaluates through the same summation path.
Cx eval_w(const WSpec& spec, const QContext& ctx);

// Very-well-poised sum with the compensating numerator parameter sent to
// infinity, leaving a q^C(n,2) growth factor; entire in the argument:
//   sum_n (1-a1 q^{2n})/(1-a1) * (a1,e1..e4;q)_n / ((q, q a1/e1..q a1/e4;q)_n)
//         * (-z)^n q^C(n,2)
Cx sum_vwp_quadratic(Cx a1, const std::vector<Cx>& extras, Cx z, const QContext& ctx);

// (c/a, c/b;q)_inf / ((c, c/(ab);q)_inf)  --  the 2_phi_1(a,b;c;q,c/ab) sum.
Cx closed_form_q_gauss(Cx a, Cx b, Cx c, const QContext& ctx);

// (az;q)_inf / (z;q)_inf  --  the 1_phi_0(a;-;q,z) sum, |z| < 1.
Cx closed_form_q_binomial(Cx a, Cx z, const QContext& ctx);

// Sums term_at(0) + term_at(1) + ... under the same three-consecutive-decay
// geometric tail rule used for the series above.  For sums whose terms are
// produced by a recurrence plus a non-multiplicative factor (an embedded
// series, a quadratic 1 - a q^{2n} factor), where a pure ratio driver does
// not apply.  term_at must be called with n = 0, 1, 2, ... in order.
Cx sum_with_geometric_tail(const std::function<Cx(std::size_t)>& term_at,
                           const QContext& ctx, const char* what);

} // namespace qv
