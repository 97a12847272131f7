#pragma once

// Exact constant-term verification.  Each integrand in scope is a product
// of kernel factors (u e^{+-i theta}; q)_inf and their reciprocals; with
// every free parameter graded as r p^m the Laurent expansion truncates
// finitely at any p-order, integration over [0, pi] keeps the degree-0
// term, and the closed-form right-hand sides divided by pi expand in the
// same exact-rational ring, so both sides compare coefficient by
// coefficient.

#include <cstddef>
#include <vector>

#include "qv/awkernel.hpp"
#include "qv/formal/laurent.hpp"

namespace qv::formal {

// Parameter value r * p^m.  r = 0 marks an absent parameter; any present
// parameter must have m >= 1 so each of its powers raises the p-grade.
struct GradedParam {
    Rat r;
    unsigned m = 1;
};

inline constexpr std::size_t kMaxOrder = 200;

// (u e^{i theta}; q)_inf for u = r p^m.  m = 0 is admissible only for
// r = +-1 (the Euler factor q^C(k,2) then supplies the grading).
LaurentPSeries expand_numerator_factor(const Rat& r, unsigned m, std::size_t order);

// 1/(u e^{i theta}; q)_inf for u = r p^m; requires m >= 1 unless r = 0.
LaurentPSeries expand_denominator_factor(const Rat& r, unsigned m, std::size_t order);

// 1/(q;q)_k as a PSeries (internally cached per order).
PSeries inv_q_factorial(std::size_t k, std::size_t order);

// (r p^s; q)_inf as a truncated product.  s = 0 requires r != 1.
PSeries poch_inf_series(const Rat& r, unsigned s, std::size_t order);

// gparams are positional: a, b, c, d, f, g.  A short list leaves trailing
// parameters absent.  Supported ids: AW, AW-sub1..3, AW-1p..3p, ISV, Prop6.

// (1/pi) * integral over [0, pi] of the identity's integrand.
PSeries constant_term_integral(IdentityId id, const std::vector<GradedParam>& gparams,
                               std::size_t order);

// The identity's right-hand side divided by pi.
PSeries rhs_pseries(IdentityId id, const std::vector<GradedParam>& gparams,
                    std::size_t order);

} // namespace qv::formal
