#include "qv/awkernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qv/errors.hpp"
#include "qv/qpochhammer.hpp"

namespace qv {

namespace {

constexpr double kPi = std::numbers::pi;

void check_finite(Cx v, const char* name) {
    if (!is_finite(v))
        throw std::invalid_argument(std::string("awkernel: non-finite parameter ") + name);
}

void check_modulus(Cx v, const char* name) {
    check_finite(v, name);
    if (v != Cx(0.0, 0.0) && std::abs(v) >= 1.0)
        throw std::domain_error(std::string("awkernel: |") + name + "| must be < 1");
}

void validate(const AwParams& par) {
    check_modulus(par.a, "a");
    check_modulus(par.b, "b");
    check_modulus(par.c, "c");
    check_modulus(par.d, "d");
    check_modulus(par.f, "f");
    check_modulus(par.g, "g");
    check_modulus(par.mu, "mu");
}

void require(Cx v, const char* name, const char* id) {
    if (v == Cx(0.0, 0.0))
        throw std::invalid_argument(std::string(id) + " requires parameter " + name);
}

bool all_real(const AwParams& par, const QContext& ctx) {
    return ctx.q.imag() == 0.0 && par.a.imag() == 0.0 && par.b.imag() == 0.0 &&
           par.c.imag() == 0.0 && par.d.imag() == 0.0 && par.f.imag() == 0.0 &&
           par.g.imag() == 0.0 && par.mu.imag() == 0.0;
}

bool all_real(const LiuParams& par, const QContext& ctx) {
    return ctx.q.imag() == 0.0 && par.a.imag() == 0.0 && par.b.imag() == 0.0 &&
           par.c.imag() == 0.0 && par.d.imag() == 0.0 && par.f.imag() == 0.0 &&
           par.r.imag() == 0.0 && par.s.imag() == 0.0 && par.t.imag() == 0.0 &&
           par.z.imag() == 0.0 && par.beta.imag() == 0.0 && par.delta.imag() == 0.0;
}

Cx denom_h(const KernelPoint& pt, std::initializer_list<Cx> lams, const QContext& ctx) {
    Cx prod(1.0, 0.0);
    for (Cx l : lams)
        if (l != Cx(0.0, 0.0)) prod *= kernel_h(pt, l, ctx);
    return prod;
}

Cx integrand_impl(IdentityId id, const KernelPoint& pt, const AwParams& par,
                  const QContext& ctx) {
    validate(par);
    const Cx p = ctx.p;
    switch (id) {
    case IdentityId::AWsub1:
        return kernel_h(pt, p, ctx) / denom_h(pt, {par.a}, ctx);
    case IdentityId::AWsub2:
        return kernel_h(pt, p, ctx) * kernel_h(pt, -p, ctx) / denom_h(pt, {par.a}, ctx);
    case IdentityId::AWsub3:
        return kernel_h(pt, Cx(1.0, 0.0), ctx) * kernel_h(pt, p, ctx) * kernel_h(pt, -p, ctx) /
               denom_h(pt, {par.a}, ctx);
    case IdentityId::AW1p:
        return aw_weight(pt, ctx) / denom_h(pt, {par.a}, ctx);
    case IdentityId::AW2p:
        return aw_weight(pt, ctx) / denom_h(pt, {par.a, par.b}, ctx);
    case IdentityId::AW3p:
        return aw_weight(pt, ctx) / denom_h(pt, {par.a, par.b, par.c}, ctx);
    case IdentityId::AW:
        return aw_weight(pt, ctx) / denom_h(pt, {par.a, par.b, par.c, par.d}, ctx);
    case IdentityId::ISV:
        return aw_weight(pt, ctx) / denom_h(pt, {par.a, par.b, par.c, par.d, par.f}, ctx);
    case IdentityId::NR:
    case IdentityId::LiuSpecial:
        require(par.mu, "mu", "NR-form integrand");
        return aw_weight(pt, ctx) * kernel_h(pt, par.mu, ctx) /
               denom_h(pt, {par.a, par.b, par.c, par.d, par.f}, ctx);
    case IdentityId::Prop6:
        return aw_weight(pt, ctx) /
               denom_h(pt, {par.a, par.b, par.c, par.d, par.f, par.g}, ctx);
    case IdentityId::Liu:
        throw std::invalid_argument("integrand: Liu takes the LiuParams overload");
    }
    throw std::invalid_argument("integrand: unknown identity id");
}

// Common 2*pi prefactor of both evaluations of Liu's right-hand side.
Cx liu_prefactor(const LiuParams& par, const QContext& ctx) {
    const Cx ab = par.a * par.b, ac = par.a * par.c, ad = par.a * par.d, af = par.a * par.f;
    const Cx bc = par.b * par.c, bd = par.b * par.d, bf = par.b * par.f;
    const Cx cd = par.c * par.d, cf = par.c * par.f, df = par.d * par.f;
    const Cx abcd = ab * cd, abcf = ab * cf, abdf = ab * df, acdf = ac * df;
    return 2.0 * kPi * qpoch_multi({abcd, abcf, abdf, acdf}, ctx) /
           qpoch_multi({ctx.q, ab, ac, ad, af, bc, bd, bf, cd, cf, df, ctx.q * par.alpha},
                       ctx);
}

// One f,g-ordered half of the six-denominator expansion; the full right-hand
// side is half(f,g) + half(g,f).
Cx prop6_half(const AwParams& par, Cx f, Cx g, const QContext& ctx) {
    const Cx q = ctx.q;
    const Cx ab = par.a * par.b, ac = par.a * par.c, ad = par.a * par.d;
    const Cx bc = par.b * par.c, bd = par.b * par.d, cd = par.c * par.d;
    const Cx af = par.a * f, bf = par.b * f, cf = par.c * f, df = par.d * f;
    const Cx abcd = ab * cd, abcf = ab * cf;
    const Cx pref = 2.0 * kPi * qpoch_multi({abcd, abcf}, ctx) /
                    qpoch_multi({q, ab, ac, ad, af, bc, bd, bf, cd, cf, f * g, g / f}, ctx);
    const Cx qfg = q * f / g;

    Cx coef(1.0, 0.0);
    Cx qn(1.0, 0.0);
    auto term = [&](std::size_t) {
        PhiSpec ph;
        ph.upper = {ab, ac, bc};
        ph.lower = {abcd, abcf * qn};
        ph.z = df * qn;
        const Cx t = coef * eval_phi(ph, ctx);
        const Cx fac = Cx(1.0, 0.0) - qfg * qn;
        if (std::abs(fac) < 1e-13)
            throw pole_error("prop6: q f/g sits on the q^-m pole lattice");
        coef *= (Cx(1.0, 0.0) - af * qn) * (Cx(1.0, 0.0) - bf * qn) *
                (Cx(1.0, 0.0) - cf * qn) /
                ((Cx(1.0, 0.0) - q * qn) * fac * (Cx(1.0, 0.0) - abcf * qn)) * q;
        qn *= q;
        return t;
    };
    return pref * sum_with_geometric_tail(term, ctx, "prop6_half");
}

} // namespace

std::string_view to_string(IdentityId id) {
    switch (id) {
    case IdentityId::AW: return "AW";
    case IdentityId::AWsub1: return "AW-sub1";
    case IdentityId::AWsub2: return "AW-sub2";
    case IdentityId::AWsub3: return "AW-sub3";
    case IdentityId::AW1p: return "AW-1p";
    case IdentityId::AW2p: return "AW-2p";
    case IdentityId::AW3p: return "AW-3p";
    case IdentityId::ISV: return "ISV";
    case IdentityId::NR: return "NR";
    case IdentityId::Liu: return "Liu";
    case IdentityId::Prop6: return "Prop6";
    case IdentityId::LiuSpecial: return "liu-special";
    }
    return "?";
}

std::optional<IdentityId> identity_from_string(std::string_view name) {
    for (IdentityId id : {IdentityId::AW, IdentityId::AWsub1, IdentityId::AWsub2,
                          IdentityId::AWsub3, IdentityId::AW1p, IdentityId::AW2p,
                          IdentityId::AW3p, IdentityId::ISV, IdentityId::NR, IdentityId::Liu,
                          IdentityId::Prop6, IdentityId::LiuSpecial})
        if (to_string(id) == name) return id;
    return std::nullopt;
}

LiuParams make_liu_params(Cx a, Cx b, Cx c, Cx d, Cx f, Cx r, Cx s, Cx t, Cx z, Cx beta,
                          Cx delta, const QContext& ctx) {
    if (a == Cx(0.0, 0.0))
        throw std::invalid_argument("make_liu_params: a = 0 degenerates alpha; rejected");
    for (auto [v, n] : {std::pair<Cx, const char*>{a, "a"}, {b, "b"}, {c, "c"}, {d, "d"},
                        {f, "f"}, {r, "r"}, {s, "s"}, {t, "t"}, {z, "z"}, {beta, "beta"},
                        {delta, "delta"}}) {
        check_finite(v, n);
        if (std::abs(v) >= 1.0)
            throw std::domain_error(std::string("make_liu_params: |") + n + "| must be < 1");
    }
    LiuParams par{a, b, c, d, f, r, s, t, z, beta, delta, a * a * b * c * d * f / ctx.q};
    // keep 1 - alpha q^{2m} factors away from zero
    Cx aq = par.alpha;
    const Cx q2 = ctx.q * ctx.q;
    while (std::abs(aq) > 0.9) {
        if (std::abs(Cx(1.0, 0.0) - aq) < 1e-13)
            throw std::domain_error("make_liu_params: alpha on the q^-2m lattice");
        aq *= q2;
    }
    return par;
}

Cx kernel_h(const KernelPoint& pt, Cx lambda, const QContext& ctx) {
    check_finite(lambda, "lambda");
    const Cx eip(std::cos(pt.theta), std::sin(pt.theta));
    Cx v = qpoch_inf(lambda * eip, ctx) * qpoch_inf(lambda * std::conj(eip), ctx);
    if (lambda.imag() == 0.0 && ctx.q.imag() == 0.0) v = Cx(v.real(), 0.0);
    return v;
}

Cx aw_weight(const KernelPoint& pt, const QContext& ctx) {
    Cx v = kernel_h(pt, Cx(1.0, 0.0), ctx) * kernel_h(pt, Cx(-1.0, 0.0), ctx) *
           kernel_h(pt, ctx.p, ctx) * kernel_h(pt, -ctx.p, ctx);
    if (ctx.q.imag() == 0.0) v = Cx(v.real(), 0.0);
    return v;
}

Cx integrand(IdentityId id, const KernelPoint& pt, const AwParams& par, const QContext& ctx) {
    Cx v = integrand_impl(id, pt, par, ctx);
    if (all_real(par, ctx)) v = Cx(v.real(), 0.0);
    return v;
}

Cx integrand_unprojected(IdentityId id, const KernelPoint& pt, const AwParams& par,
                         const QContext& ctx) {
    return integrand_impl(id, pt, par, ctx);
}

Cx integrand(IdentityId id, const KernelPoint& pt, const LiuParams& par, const QContext& ctx) {
    if (id != IdentityId::Liu)
        throw std::invalid_argument("integrand: LiuParams overload is for Liu only");
    const Cx eip(std::cos(pt.theta), std::sin(pt.theta));
    PhiSpec ph;
    ph.upper = {par.a * eip, par.a * std::conj(eip), par.beta, par.delta};
    ph.lower = {par.r, par.s, par.t};
    ph.z = par.b * par.c * par.d * par.f * par.z;
    Cx v = aw_weight(pt, ctx) /
           denom_h(pt, {par.a, par.b, par.c, par.d, par.f}, ctx) * eval_phi(ph, ctx);
    if (all_real(par, ctx)) v = Cx(v.real(), 0.0);
    return v;
}

Cx rhs_closed(IdentityId id, const AwParams& par, const QContext& ctx) {
    validate(par);
    const Cx q = ctx.q, p = ctx.p;
    const Cx ab = par.a * par.b, ac = par.a * par.c, ad = par.a * par.d;
    const Cx bc = par.b * par.c, bd = par.b * par.d, cd = par.c * par.d;
    const Cx abcd = ab * cd;
    switch (id) {
    case IdentityId::AWsub1:
        return kPi * qpoch_multi({p * par.a, p * par.a}, ctx) /
               qpoch_multi({q, par.a * par.a}, ctx);
    case IdentityId::AWsub2:
        return kPi * qpoch_multi({p, -p}, ctx) / qpoch_multi({q, par.a, -par.a}, ctx);
    case IdentityId::AWsub3:
        return 2.0 * kPi / qpoch_multi({q, -par.a}, ctx);
    case IdentityId::AW1p:
        return 2.0 * kPi / qpoch_inf(q, ctx);
    case IdentityId::AW2p:
        return 2.0 * kPi / qpoch_multi({q, ab}, ctx);
    case IdentityId::AW3p:
        return 2.0 * kPi / qpoch_multi({q, ab, ac, bc}, ctx);
    case IdentityId::AW:
        return 2.0 * kPi * qpoch_inf(abcd, ctx) /
               qpoch_multi({q, ab, ac, ad, bc, bd, cd}, ctx);
    case IdentityId::ISV: {
        const Cx af = par.a * par.f, bf = par.b * par.f, cf = par.c * par.f,
                 df = par.d * par.f;
        const Cx abcf = ab * cf;
        PhiSpec ph;
        ph.upper = {ab, ac, bc};
        ph.lower = {abcd, abcf};
        ph.z = df;
        return 2.0 * kPi * qpoch_multi({abcd, abcf}, ctx) /
               qpoch_multi({q, ab, ac, ad, af, bc, bd, bf, cd, cf}, ctx) * eval_phi(ph, ctx);
    }
    case IdentityId::NR: {
        require(par.mu, "mu", "NR");
        require(par.d, "d", "NR");
        require(par.f, "f", "NR");
        const Cx af = par.a * par.f, bf = par.b * par.f, cf = par.c * par.f,
                 df = par.d * par.f;
        const Cx abcf = ab * cf, abcmu = ab * par.c * par.mu;
        WSpec w;
        w.a1 = abcmu / q;
        w.extras = {ab, ac, bc, par.mu / par.d, par.mu / par.f};
        w.z = df;
        return 2.0 * kPi *
               qpoch_multi({par.a * par.mu, par.b * par.mu, par.c * par.mu, abcd, abcf},
                           ctx) /
               qpoch_multi({q, ab, ac, ad, af, bc, bd, bf, cd, cf, abcmu}, ctx) *
               eval_w(w, ctx);
    }
    case IdentityId::LiuSpecial: {
        require(par.mu, "mu", "liu-special");
        for (auto [v, n] : {std::pair<Cx, const char*>{par.a, "a"}, {par.b, "b"},
                            {par.c, "c"}, {par.d, "d"}, {par.f, "f"}})
            require(v, n, "liu-special");
        const Cx af = par.a * par.f, bf = par.b * par.f, cf = par.c * par.f,
                 df = par.d * par.f;
        const Cx abcf = ab * cf;
        const Cx abcdf = abcd * par.f;
        WSpec w;
        w.a1 = par.a * abcdf / q;
        w.extras = {ab, ac, ad, af, abcdf / par.mu};
        w.z = par.mu / par.a;
        return 2.0 * kPi *
               qpoch_multi({par.mu / par.a, par.a * par.mu, abcd, abcf, ab * df, ac * df},
                           ctx) /
               qpoch_multi({q, ab, ac, ad, af, bc, bd, bf, cd, cf, df, par.a * abcdf},
                           ctx) *
               eval_w(w, ctx);
    }
    case IdentityId::Prop6:
        require(par.f, "f", "Prop6");
        require(par.g, "g", "Prop6");
        return prop6_half(par, par.f, par.g, ctx) + prop6_half(par, par.g, par.f, ctx);
    case IdentityId::Liu:
        throw std::invalid_argument("rhs_closed: Liu's right side is liu_rhs_double_sum");
    }
    throw std::invalid_argument("rhs_closed: unknown identity id");
}

Cx liu_rhs_double_sum(const LiuParams& par, const QContext& ctx) {
    const Cx q = ctx.q;
    const Cx ab = par.a * par.b, ac = par.a * par.c, ad = par.a * par.d, af = par.a * par.f;
    const Cx abcd = ab * par.c * par.d, abcf = ab * par.c * par.f;
    const Cx abdf = ab * par.d * par.f, acdf = ac * par.d * par.f;
    const Cx mbcdf = -(par.b * par.c * par.d * par.f);
    const Cx one(1.0, 0.0);

    Cx B(1.0, 0.0); // (alpha,ab,ac,ad,af;q)_n / ((q,abcd,abcf,abdf,acdf;q)_n) q^C(n,2) (-bcdf)^n
    Cx qn(1.0, 0.0), q2n(1.0, 0.0);
    auto term = [&](std::size_t n) {
        PhiSpec inner;
        inner.upper = {qpow_int(q, -static_cast<long>(n)), par.alpha * qn, par.beta,
                       par.delta};
        inner.lower = {par.r, par.s, par.t};
        inner.z = q * par.z;
        inner.terminating_at = n;
        const Cx t = (one - par.alpha * q2n) / (one - par.alpha) * B * eval_phi(inner, ctx);
        B *= (one - par.alpha * qn) * (one - ab * qn) * (one - ac * qn) * (one - ad * qn) *
             (one - af * qn) /
             ((one - q * qn) * (one - abcd * qn) * (one - abcf * qn) * (one - abdf * qn) *
              (one - acdf * qn)) *
             mbcdf * qn;
        qn *= q;
        q2n *= q * q;
        return t;
    };
    return liu_prefactor(par, ctx) * sum_with_geometric_tail(term, ctx, "liu_rhs_double_sum");
}

Cx liu_rhs_relation_form(const LiuParams& par, const QContext& ctx) {
    const Cx q = ctx.q;
    const Cx ab = par.a * par.b, ac = par.a * par.c, ad = par.a * par.d, af = par.a * par.f;
    const Cx bc = par.b * par.c, df = par.d * par.f;
    const Cx abcd = ab * par.c * par.d, abcf = ab * par.c * par.f;
    const Cx abdf = ab * df, acdf = ac * df;
    const Cx zfac = par.b * par.c * df * par.z;
    const Cx one(1.0, 0.0);

    const Cx pref = qpoch_multi({q * par.alpha, df}, ctx) / qpoch_multi({abdf, acdf}, ctx);
    Cx coef(1.0, 0.0);
    Cx qk(1.0, 0.0);
    auto term = [&](std::size_t) {
        PhiSpec ph;
        ph.upper = {ab * qk, ac * qk, bc};
        ph.lower = {abcd * qk, abcf * qk};
        ph.z = df;
        const Cx t = coef * eval_phi(ph, ctx);
        coef *= (one - ab * qk) * (one - ac * qk) * (one - ad * qk) * (one - af * qk) *
                (one - par.beta * qk) * (one - par.delta * qk) /
                ((one - q * qk) * (one - abcd * qk) * (one - abcf * qk) *
                 (one - par.r * qk) * (one - par.s * qk) * (one - par.t * qk)) *
                zfac;
        qk *= q;
        return t;
    };
    return liu_prefactor(par, ctx) * pref *
           sum_with_geometric_tail(term, ctx, "liu_rhs_relation_form");
}

} // namespace qv
