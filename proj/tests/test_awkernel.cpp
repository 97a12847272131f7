#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "qv/awkernel.hpp"
#include "qv/qpochhammer.hpp"
#include "qv/quadrature.hpp"

using qv::AwParams;
using qv::Cx;
using qv::IdentityId;
using qv::KernelPoint;
using qv::LiuParams;
using qv::QContext;

namespace {

constexpr double kPi = 3.14159265358979323846;

double rel(Cx a, Cx b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

// Independent product form: h(x;lambda) = prod_k (1 - 2 lambda x q^k + lambda^2 q^{2k}).
Cx h_product_form(double theta, Cx lambda, Cx q) {
    const double x = std::cos(theta);
    Cx v(1.0, 0.0);
    Cx qk(1.0, 0.0);
    for (int k = 0; k < 600; ++k) {
        v *= Cx(1.0, 0.0) - 2.0 * lambda * x * qk + lambda * lambda * qk * qk;
        qk *= q;
        if (std::abs(lambda) * std::abs(qk) < 1e-20) break;
    }
    return v;
}

// The extension identity's right side assembled directly from finite
// q-shifted factorials: prefactor times a double sum over n and the inner
// terminating series index j.
Cx brute_double_sum(const LiuParams& p, const QContext& ctx, long nmax) {
    const Cx q = ctx.q;
    const Cx ab = p.a * p.b, ac = p.a * p.c, ad = p.a * p.d, af = p.a * p.f;
    const Cx bc = p.b * p.c, bd = p.b * p.d, bf = p.b * p.f;
    const Cx cd = p.c * p.d, cf = p.c * p.f, df = p.d * p.f;
    const Cx abcd = ab * cd, abcf = ab * cf, abdf = ab * df, acdf = ac * df;
    const Cx pref =
        2.0 * kPi * qv::qpoch_multi({abcd, abcf, abdf, acdf}, ctx) /
        qv::qpoch_multi({q, ab, ac, ad, af, bc, bd, bf, cd, cf, df, q * p.alpha}, ctx);

    Cx total(0.0, 0.0);
    for (long n = 0; n <= nmax; ++n) {
        const auto un = static_cast<std::size_t>(n);
        Cx outer = (Cx(1.0, 0.0) - p.alpha * qv::qpow_int(q, 2 * n)) / (Cx(1.0, 0.0) - p.alpha);
        outer *= qv::qpoch_finite(p.alpha, q, un) * qv::qpoch_finite(ab, q, un) *
                 qv::qpoch_finite(ac, q, un) * qv::qpoch_finite(ad, q, un) *
                 qv::qpoch_finite(af, q, un);
        outer /= qv::qpoch_finite(q, q, un) * qv::qpoch_finite(abcd, q, un) *
                 qv::qpoch_finite(abcf, q, un) * qv::qpoch_finite(abdf, q, un) *
                 qv::qpoch_finite(acdf, q, un);
        outer *= qv::qpow_int(q, n * (n - 1) / 2) * qv::qpow_int(-bc * df, n);

        const Cx qmn = qv::qpow_int(q, -n);
        const Cx aqn = p.alpha * qv::qpow_int(q, n);
        Cx inner(0.0, 0.0);
        for (long j = 0; j <= n; ++j) {
            const auto uj = static_cast<std::size_t>(j);
            Cx t = qv::qpoch_finite(qmn, q, uj) * qv::qpoch_finite(aqn, q, uj) *
                   qv::qpoch_finite(p.beta, q, uj) * qv::qpoch_finite(p.delta, q, uj);
            t /= qv::qpoch_finite(q, q, uj) * qv::qpoch_finite(p.r, q, uj) *
                 qv::qpoch_finite(p.s, q, uj) * qv::qpoch_finite(p.t, q, uj);
            inner += t * qv::qpow_int(q * p.z, j);
        }
        total += outer * inner;
    }
    return pref * total;
}

} // namespace

TEST_CASE("kernel at lambda zero is 1") {
    QContext ctx(Cx(0.5, 0.0));
    CHECK(qv::kernel_h(qv::kernel_point(1.1), Cx(0.0, 0.0), ctx) == Cx(1.0, 0.0));
}

TEST_CASE("kernel at theta zero squares the infinite product") {
    QContext ctx(Cx(0.5, 0.0));
    Cx v = qv::kernel_h(qv::kernel_point(0.0), Cx(0.5, 0.0), ctx);
    CHECK(v.real() == doctest::Approx(0.28878809508660242128 * 0.28878809508660242128)
                          .epsilon(1e-12));
}

TEST_CASE("kernel matches its real quadratic product form") {
    QContext ctx(Cx(0.4, 0.0));
    for (double th : {kPi / 3.0, 0.3, 2.5}) {
        for (Cx lam : {Cx(0.3, 0.0), Cx(-0.8, 0.0), Cx(0.2, 0.5)}) {
            Cx lhs = qv::kernel_h(qv::kernel_point(th), lam, ctx);
            CHECK(rel(lhs, h_product_form(th, lam, ctx.q)) < 1e-12);
        }
    }
}

TEST_CASE("weight vanishes at the interval ends and is positive inside") {
    QContext ctx(Cx(0.25, 0.0));
    CHECK(std::abs(qv::aw_weight(qv::kernel_point(0.0), ctx)) <= 1e-13);
    CHECK(std::abs(qv::aw_weight(qv::kernel_point(kPi), ctx)) <= 1e-13);

    Cx mid = qv::aw_weight(qv::kernel_point(kPi / 2.0), ctx);
    CHECK(mid.imag() == 0.0);
    CHECK(mid.real() > 0.0);

    for (double q : {0.1, 0.5, 0.9}) {
        QContext c(Cx(q, 0.0));
        for (double th = 0.01; th < kPi - 0.005; th += 0.31) {
            Cx w = qv::aw_weight(qv::kernel_point(th), c);
            CHECK(w.imag() == 0.0);
            CHECK(w.real() > 0.0);
        }
    }
}

TEST_CASE("empty parameter set reduces the integrand to the weight") {
    QContext ctx(Cx(0.5, 0.0));
    AwParams par;
    for (double th : {0.4, 1.3, 2.8}) {
        KernelPoint pt = qv::kernel_point(th);
        CHECK(rel(qv::integrand(IdentityId::AW, pt, par, ctx), qv::aw_weight(pt, ctx)) < 1e-15);
    }
}

TEST_CASE("degenerate parameter values collapse one integrand into another") {
    QContext ctx(Cx(0.5, 0.0));
    AwParams par;
    par.a = Cx(0.3, 0.1);
    par.b = Cx(-0.25, 0.0);
    par.c = Cx(0.2, -0.1);
    par.d = Cx(0.15, 0.0);
    par.f = Cx(0.1, 0.05);

    // the extra-weight integrand is the five-kernel one times h(x; mu); a
    // zero slot means "absent" and the extra-weight form insists on having one
    par.mu = Cx(0.35, -0.2);
    for (double th : {0.7, 1.9}) {
        KernelPoint pt = qv::kernel_point(th);
        CHECK(rel(qv::integrand(IdentityId::NR, pt, par, ctx),
                  qv::integrand(IdentityId::ISV, pt, par, ctx) *
                      qv::kernel_h(pt, par.mu, ctx)) < 1e-13);
    }
    par.mu = Cx(0.0, 0.0);
    CHECK_THROWS_AS(qv::integrand(IdentityId::NR, qv::kernel_point(0.7), par, ctx),
                    std::invalid_argument);

    // vanishing series argument: z = 0 collapses the embedded series to 1
    LiuParams lp = qv::make_liu_params(Cx(0.3, 0.0), Cx(0.25, 0.0), Cx(0.2, 0.0), Cx(0.15, 0.0),
                                       Cx(0.1, 0.0), Cx(0.35, 0.0), Cx(0.3, 0.0), Cx(0.25, 0.0),
                                       Cx(0.0, 0.0), Cx(0.2, 0.0), Cx(0.15, 0.0), ctx);
    AwParams isv;
    isv.a = lp.a;
    isv.b = lp.b;
    isv.c = lp.c;
    isv.d = lp.d;
    isv.f = lp.f;
    for (double th : {0.7, 1.9}) {
        KernelPoint pt = qv::kernel_point(th);
        CHECK(rel(qv::integrand(IdentityId::Liu, pt, lp, ctx),
                  qv::integrand(IdentityId::ISV, pt, isv, ctx)) < 1e-13);
    }
}

TEST_CASE("four-parameter identity is symmetric under parameter permutations") {
    QContext ctx(Cx(0.5, 0.0));
    AwParams par;
    par.a = Cx(0.3, 0.1);
    par.b = Cx(-0.25, 0.0);
    par.c = Cx(0.2, -0.1);
    par.d = Cx(0.45, 0.0);

    AwParams perm; // (a b c d) -> (d a b c)
    perm.a = par.d;
    perm.b = par.a;
    perm.c = par.b;
    perm.d = par.c;

    AwParams swap_ab = par;
    std::swap(swap_ab.a, swap_ab.b);

    CHECK(rel(qv::rhs_closed(IdentityId::AW, par, ctx), qv::rhs_closed(IdentityId::AW, perm, ctx)) <
          1e-13);
    CHECK(rel(qv::rhs_closed(IdentityId::AW, par, ctx),
              qv::rhs_closed(IdentityId::AW, swap_ab, ctx)) < 1e-13);
    for (double th : {0.5, 2.2}) {
        KernelPoint pt = qv::kernel_point(th);
        CHECK(rel(qv::integrand(IdentityId::AW, pt, par, ctx),
                  qv::integrand(IdentityId::AW, pt, perm, ctx)) < 1e-13);
    }
}

TEST_CASE("five-parameter identity symmetry groups") {
    QContext ctx(Cx(0.5, 0.0));
    AwParams par;
    par.a = Cx(0.3, 0.0);
    par.b = Cx(-0.25, 0.1);
    par.c = Cx(0.2, 0.0);
    par.d = Cx(0.15, -0.05);
    par.f = Cx(0.1, 0.0);

    // integrand: full symmetric group on the five denominator parameters
    AwParams perm;
    perm.a = par.f;
    perm.b = par.d;
    perm.c = par.a;
    perm.d = par.c;
    perm.f = par.b;
    for (double th : {0.6, 2.0}) {
        KernelPoint pt = qv::kernel_point(th);
        CHECK(rel(qv::integrand(IdentityId::ISV, pt, par, ctx),
                  qv::integrand(IdentityId::ISV, pt, perm, ctx)) < 1e-13);
    }

    // closed form as written: (a b c) and (d f) block permutations are cheap...
    AwParams abc = par;
    std::swap(abc.a, abc.c);
    AwParams dfp = par;
    std::swap(dfp.d, dfp.f);
    Cx base = qv::rhs_closed(IdentityId::ISV, par, ctx);
    CHECK(rel(base, qv::rhs_closed(IdentityId::ISV, abc, ctx)) < 1e-13);
    CHECK(rel(base, qv::rhs_closed(IdentityId::ISV, dfp, ctx)) < 1e-13);

    // ...while a cross-block exchange is only equal because the integral is
    CHECK(rel(base, qv::rhs_closed(IdentityId::ISV, perm, ctx)) < 1e-9);
}

TEST_CASE("six-parameter closed form is exactly symmetric in its two extra slots") {
    QContext ctx(Cx(0.45, 0.0));
    AwParams par;
    par.a = Cx(0.3, 0.0);
    par.b = Cx(-0.2, 0.1);
    par.c = Cx(0.25, 0.0);
    par.d = Cx(0.15, 0.0);
    par.f = Cx(0.2, -0.1);
    par.g = Cx(0.35, 0.0);

    AwParams swapped = par;
    std::swap(swapped.f, swapped.g);
    Cx v1 = qv::rhs_closed(IdentityId::Prop6, par, ctx);
    Cx v2 = qv::rhs_closed(IdentityId::Prop6, swapped, ctx);
    CHECK(v1 == v2); // identical terms added in IEEE arithmetic commute
}

TEST_CASE("real parameters give exactly real integrands") {
    QContext ctx(Cx(0.6, 0.0));
    AwParams par;
    par.a = Cx(0.3, 0.0);
    par.b = Cx(-0.5, 0.0);
    par.c = Cx(0.25, 0.0);
    par.d = Cx(0.1, 0.0);
    for (double th : {0.3, 1.0, 2.7}) {
        KernelPoint pt = qv::kernel_point(th);
        Cx raw = qv::integrand_unprojected(IdentityId::AW, pt, par, ctx);
        CHECK(std::abs(raw.imag()) <= 1e-12 * std::max(1.0, std::abs(raw)));
        CHECK(qv::integrand(IdentityId::AW, pt, par, ctx).imag() == 0.0);
    }
}

TEST_CASE("closed forms at degenerate parameters") {
    QContext ctx(Cx(0.5, 0.0));
    AwParams none;
    CHECK(rel(qv::rhs_closed(IdentityId::AW, none, ctx),
              2.0 * kPi / qv::qpoch_inf(ctx.q, ctx)) < 1e-12);

    AwParams two;
    two.a = Cx(0.3, 0.0);
    two.b = Cx(0.2, 0.0);
    Cx expect2 = 2.0 * kPi / (qv::qpoch_inf(ctx.q, ctx) * qv::qpoch_inf(two.a * two.b, ctx));
    CHECK(rel(qv::rhs_closed(IdentityId::AW2p, two, ctx), expect2) < 1e-12);

    AwParams four;
    four.a = Cx(0.3, 0.1);
    four.b = Cx(-0.25, 0.0);
    four.c = Cx(0.2, -0.1);
    four.d = Cx(0.15, 0.0);
    CHECK(rel(qv::rhs_closed(IdentityId::ISV, four, ctx), qv::rhs_closed(IdentityId::AW, four, ctx)) <
          1e-12);
}

TEST_CASE("extension identity right side against a direct double sum") {
    QContext ctx(Cx(0.5, 0.0));
    LiuParams p1 = qv::make_liu_params(Cx(0.3, 0.0), Cx(0.25, 0.0), Cx(0.2, 0.0), Cx(0.15, 0.0),
                                       Cx(0.1, 0.0), Cx(0.35, 0.0), Cx(0.3, 0.0), Cx(0.25, 0.0),
                                       Cx(0.3, 0.0), Cx(0.2, 0.0), Cx(0.15, 0.0), ctx);
    CHECK(rel(qv::liu_rhs_double_sum(p1, ctx), brute_double_sum(p1, ctx, 40)) < 1e-10);

    // vanishing upper parameter in the inner series
    LiuParams p2 = qv::make_liu_params(Cx(0.3, 0.0), Cx(0.25, 0.0), Cx(0.2, 0.0), Cx(0.15, 0.0),
                                       Cx(0.1, 0.0), Cx(0.5, 0.0), Cx(0.5, 0.0), Cx(0.5, 0.0),
                                       Cx(0.2, 0.0), Cx(0.0, 0.0), Cx(0.0, 0.0), ctx);
    CHECK(rel(qv::liu_rhs_double_sum(p2, ctx), brute_double_sum(p2, ctx, 40)) < 1e-10);

    // complex parameters
    LiuParams p3 = qv::make_liu_params(Cx(0.3, 0.1), Cx(0.2, -0.1), Cx(0.25, 0.0), Cx(0.1, 0.1),
                                       Cx(0.15, 0.0), Cx(0.3, 0.1), Cx(0.25, 0.0), Cx(0.2, 0.0),
                                       Cx(0.25, -0.1), Cx(0.15, 0.0), Cx(0.1, 0.1), ctx);
    CHECK(rel(qv::liu_rhs_double_sum(p3, ctx), brute_double_sum(p3, ctx, 40)) < 1e-10);
}

TEST_CASE("double-sum and rearranged forms agree") {
    QContext ctx(Cx(0.5, 0.0));
    LiuParams p = qv::make_liu_params(Cx(0.3, 0.0), Cx(0.25, 0.0), Cx(0.2, 0.0), Cx(0.15, 0.0),
                                      Cx(0.1, 0.0), Cx(0.35, 0.0), Cx(0.3, 0.0), Cx(0.25, 0.0),
                                      Cx(0.3, 0.0), Cx(0.2, 0.0), Cx(0.15, 0.0), ctx);
    CHECK(rel(qv::liu_rhs_double_sum(p, ctx), qv::liu_rhs_relation_form(p, ctx)) < 1e-9);
}

TEST_CASE("extension parameter construction") {
    QContext ctx(Cx(0.5, 0.0));
    Cx a(0.3, 0.0), b(0.25, 0.0), c(0.2, 0.0), d(0.15, 0.0), f(0.1, 0.0);
    LiuParams p = qv::make_liu_params(a, b, c, d, f, Cx(0.35, 0.0), Cx(0.3, 0.0), Cx(0.25, 0.0),
                                      Cx(0.3, 0.0), Cx(0.2, 0.0), Cx(0.15, 0.0), ctx);
    CHECK(rel(p.alpha, a * a * b * c * d * f / ctx.q) < 1e-15);

    CHECK_THROWS_AS(qv::make_liu_params(Cx(0.0, 0.0), b, c, d, f, Cx(0.35, 0.0), Cx(0.3, 0.0),
                                        Cx(0.25, 0.0), Cx(0.3, 0.0), Cx(0.2, 0.0), Cx(0.15, 0.0),
                                        ctx),
                    std::invalid_argument);
    CHECK_THROWS_AS(qv::make_liu_params(a, b, c, d, f, Cx(1.1, 0.0), Cx(0.3, 0.0), Cx(0.25, 0.0),
                                        Cx(0.3, 0.0), Cx(0.2, 0.0), Cx(0.15, 0.0), ctx),
                    std::domain_error);
}

TEST_CASE("parameter validation and id dispatch") {
    QContext ctx(Cx(0.5, 0.0));
    KernelPoint pt = qv::kernel_point(1.0);

    AwParams bad;
    bad.a = Cx(1.2, 0.0);
    CHECK_THROWS_AS(qv::integrand(IdentityId::AW, pt, bad, ctx), std::domain_error);

    AwParams nan_par;
    nan_par.a = Cx(std::nan(""), 0.0);
    CHECK_THROWS_AS(qv::integrand(IdentityId::AW, pt, nan_par, ctx), std::invalid_argument);

    AwParams ok;
    ok.a = Cx(0.3, 0.0);
    CHECK_THROWS_AS(qv::integrand(IdentityId::Liu, pt, ok, ctx), std::invalid_argument);
    CHECK_THROWS_AS(qv::rhs_closed(IdentityId::Liu, ok, ctx), std::invalid_argument);

    LiuParams lp = qv::make_liu_params(Cx(0.3, 0.0), Cx(0.25, 0.0), Cx(0.2, 0.0), Cx(0.15, 0.0),
                                       Cx(0.1, 0.0), Cx(0.35, 0.0), Cx(0.3, 0.0), Cx(0.25, 0.0),
                                       Cx(0.3, 0.0), Cx(0.2, 0.0), Cx(0.15, 0.0), ctx);
    CHECK_THROWS_AS(qv::integrand(IdentityId::AW, pt, lp, ctx), std::invalid_argument);
}

TEST_CASE("identity names round-trip") {
    using qv::identity_from_string;
    const IdentityId all[] = {IdentityId::AW,    IdentityId::AWsub1, IdentityId::AWsub2,
                              IdentityId::AWsub3, IdentityId::AW1p,   IdentityId::AW2p,
                              IdentityId::AW3p,  IdentityId::ISV,    IdentityId::NR,
                              IdentityId::Liu,   IdentityId::Prop6,  IdentityId::LiuSpecial};
    for (IdentityId id : all) {
        auto back = identity_from_string(qv::to_string(id));
        REQUIRE(back.has_value());
        CHECK(*back == id);
    }
    CHECK(!identity_from_string("no-such-identity").has_value());
}
