#pragma once

// The Askey-Wilson kernel
//
//   h(x; lambda) = (lambda e^{i theta}, lambda e^{-i theta}; q)_inf,   x = cos theta,
//
// the weight h(x; 1, -1, q^(1/2), -q^(1/2)), and the integrand / closed-form
// pairs for the identity family built on them: the Askey-Wilson integral, its
// one-to-three-denominator ladder, the Ismail-Stanton-Viennot integral, the
// Nassrallah-Rahman integral, Liu's extension carrying an embedded 4_phi_3,
// and the six-denominator expansion formula.

#include <optional>
#include <string_view>

#include "qv/qcontext.hpp"
#include "qv/qhyper.hpp"

namespace qv {

enum class IdentityId {
    AW,       // weight / h(x;a,b,c,d)
    AWsub1,   // h(x;p) / h(x;a)
    AWsub2,   // h(x;p,-p) / h(x;a)
    AWsub3,   // h(x;1,p,-p) / h(x;a)
    AW1p,     // weight / h(x;a)
    AW2p,     // weight / h(x;a,b)
    AW3p,     // weight / h(x;a,b,c)
    ISV,      // weight / h(x;a,b,c,d,f)
    NR,       // weight * h(x;mu) / h(x;a,b,c,d,f)
    Liu,      // ISV integrand times an embedded 4_phi_3
    Prop6,    // weight / h(x;a,b,c,d,f,g)
    LiuSpecial, // NR-form closed identity reached from Liu at r=a*mu, s=beta, t=delta
};

std::string_view to_string(IdentityId id);
std::optional<IdentityId> identity_from_string(std::string_view name);

struct KernelPoint {
    double theta;
    double x; // cos(theta)
};

inline KernelPoint kernel_point(double theta) { return {theta, std::cos(theta)}; }

// Parameter slots for the integral family; a zero slot means the parameter
// is absent (h(x;0) = 1).  Every present parameter must have modulus < 1.
struct AwParams {
    Cx a{0.0, 0.0}, b{0.0, 0.0}, c{0.0, 0.0}, d{0.0, 0.0};
    Cx f{0.0, 0.0}, g{0.0, 0.0};
    Cx mu{0.0, 0.0};
};

// Parameters of Liu's extension.  alpha = a^2 b c d f / q is fixed at
// construction and reused verbatim by every evaluator.
struct LiuParams {
    Cx a, b, c, d, f;
    Cx r, s, t;
    Cx z;
    Cx beta, delta;
    Cx alpha;
};

LiuParams make_liu_params(Cx a, Cx b, Cx c, Cx d, Cx f, Cx r, Cx s, Cx t,
                          Cx z, Cx beta, Cx delta, const QContext& ctx);

Cx kernel_h(const KernelPoint& pt, Cx lambda, const QContext& ctx);

// h(x; 1, -1, p, -p); nonnegative real on theta in (0, pi) for real q.
Cx aw_weight(const KernelPoint& pt, const QContext& ctx);

Cx integrand(IdentityId id, const KernelPoint& pt, const AwParams& par, const QContext& ctx);
Cx integrand(IdentityId id, const KernelPoint& pt, const LiuParams& par, const QContext& ctx);

// As integrand, but without the final projection of provably-real values
// onto the real axis; used to assert how small the imaginary residue is.
Cx integrand_unprojected(IdentityId id, const KernelPoint& pt, const AwParams& par,
                         const QContext& ctx);

// Closed form of the integral for every id except Liu, whose right-hand
// side is the double sum below.
Cx rhs_closed(IdentityId id, const AwParams& par, const QContext& ctx);

// Right-hand side of Liu's extension: prefactor times the sum over n of
// very-well-poised outer terms, each carrying a terminating 4_phi_3.
Cx liu_rhs_double_sum(const LiuParams& par, const QContext& ctx);

// Same value, evaluated through the rearranged single-k sum whose terms
// carry a 3_phi_2 with argument df.
Cx liu_rhs_relation_form(const LiuParams& par, const QContext& ctx);

} // namespace qv
