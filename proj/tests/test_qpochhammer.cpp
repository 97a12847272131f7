#include <complex>
#include <vector>

#include "doctest.h"
#include "qv/errors.hpp"
#include "qv/qpochhammer.hpp"

using qv::Cx;
using qv::QContext;

namespace {

// Independent reference: multiply (1 - x q^k) directly until the remaining
// factors are indistinguishable from 1 at double precision.
Cx direct_product(Cx x, Cx q) {
    Cx v(1.0, 0.0);
    Cx xq = x;
    for (int k = 0; k < 5000 && std::abs(xq) > 1e-22; ++k) {
        v *= Cx(1.0, 0.0) - xq;
        xq *= q;
    }
    return v;
}

double rel(Cx a, Cx b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

} // namespace

TEST_CASE("finite product basics") {
    CHECK(qv::qpoch_finite(Cx(0.7, 0.0), Cx(0.3, 0.0), 0) == Cx(1.0, 0.0));
    CHECK(qv::qpoch_finite(Cx(0.5, 0.0), Cx(0.5, 0.0), 2).real() == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(qv::qpoch_finite(Cx(1.0, 0.0), Cx(0.4, 0.0), 3) == Cx(0.0, 0.0));
}

TEST_CASE("finite product rejects non-finite input") {
    CHECK_THROWS_AS(qv::qpoch_finite(Cx(std::nan(""), 0.0), Cx(0.4, 0.0), 3), std::invalid_argument);
}

TEST_CASE("infinite product: frozen value and trivial cases") {
    QContext ctx(Cx(0.5, 0.0));
    CHECK(qv::qpoch_inf(Cx(0.0, 0.0), ctx) == Cx(1.0, 0.0));
    // (1/2; 1/2)_inf computed independently at 40-digit precision.
    CHECK(qv::qpoch_inf(Cx(0.5, 0.0), ctx).real() ==
          doctest::Approx(0.28878809508660242128).epsilon(5e-12));

    QContext tiny(Cx(1e-300, 0.0));
    CHECK(qv::qpoch_inf(Cx(0.5, 0.0), tiny).real() == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("infinite product agrees with the direct partial product") {
    const Cx points[][2] = {
        {Cx(0.3, 0.1), Cx(0.6, 0.0)},
        {Cx(-0.8, 0.4), Cx(0.85, 0.0)},
        {Cx(0.9, 0.0), Cx(0.2, -0.3)},
        {Cx(0.0, 0.95), Cx(0.5, 0.25)},
    };
    // agreement is bounded by the tail-truncation contract, not machine eps
    for (const auto& pt : points) {
        QContext ctx(pt[1]);
        CHECK(rel(qv::qpoch_inf(pt[0], ctx), direct_product(pt[0], pt[1])) < 10.0 * ctx.tol_tail);
    }
}

TEST_CASE("multi-argument products") {
    QContext ctx(Cx(0.5, 0.0));
    CHECK(qv::qpoch_multi({}, ctx) == Cx(1.0, 0.0));
    CHECK(qv::qpoch_multi({Cx(0.5, 0.0), Cx(0.5, 0.0)}, ctx, 2).real() ==
          doctest::Approx(0.140625).epsilon(1e-15));
    Cx lhs = qv::qpoch_multi({Cx(0.3, 0.0), Cx(-0.3, 0.0)}, ctx);
    Cx rhs = qv::qpoch_inf(Cx(0.3, 0.0), ctx) * qv::qpoch_inf(Cx(-0.3, 0.0), ctx);
    CHECK(rel(lhs, rhs) < 1e-15);
}

TEST_CASE("telescoping: (x;q)_n * (x q^n;q)_inf = (x;q)_inf") {
    const Cx xs[] = {Cx(0.7, 0.0), Cx(-0.5, 0.3), Cx(0.2, -0.6), Cx(0.95, 0.0)};
    const Cx qs[] = {Cx(0.3, 0.0), Cx(0.8, 0.0), Cx(0.4, 0.2)};
    for (Cx x : xs)
        for (Cx q : qs)
            for (std::size_t n : {0u, 1u, 5u, 17u, 30u}) {
                QContext ctx(q);
                Cx xqn = x * qv::qpow_int(q, static_cast<long>(n));
                Cx lhs = qv::qpoch_finite(x, q, n) * qv::qpoch_inf(xqn, ctx);
                Cx rhs = qv::qpoch_inf(x, ctx);
                CHECK(rel(lhs, rhs) < 10.0 * ctx.tol_tail);
            }
}

TEST_CASE("conjugation symmetry") {
    Cx x(0.4, 0.7), q(0.3, 0.2);
    QContext ctx(q), cctx(std::conj(q));
    Cx direct = qv::qpoch_inf(std::conj(x), cctx);
    Cx conjed = std::conj(qv::qpoch_inf(x, ctx));
    CHECK(rel(direct, conjed) < 1e-15);
}

TEST_CASE("tightening the tail tolerance moves the value at most by the looser bound") {
    Cx x(0.6, 0.2), q(0.5, 0.0);
    QContext loose(q, 1e-10, 64);
    QContext tight(q, 1e-14, 65536);
    CHECK(rel(qv::qpoch_inf(x, loose), qv::qpoch_inf(x, tight)) < 10.0 * loose.tol_tail);

    // a budget smaller than the tail-bound truncation point is an error,
    // never a silent early stop
    QContext cramped(Cx(0.75, 0.0), 1e-12, 64);
    CHECK_THROWS_AS(qv::qpoch_inf(x, cramped), qv::no_convergence);
}

TEST_CASE("context validation") {
    CHECK_THROWS_AS(QContext(Cx(1.0, 0.0)), std::domain_error);
    CHECK_THROWS_AS(QContext(Cx(0.5, 0.0), 1e-9), std::domain_error);  // tail tol too loose
    CHECK_THROWS_AS(QContext(Cx(0.5, 0.0), 0.0), std::domain_error);
    CHECK_THROWS_AS(QContext(Cx(0.5, 0.0), 1e-12, 32), std::domain_error);
    CHECK_THROWS_AS(QContext(Cx(std::nan(""), 0.0)), std::invalid_argument);
    QContext zero(Cx(0.0, 0.0)); // q = 0 is admissible; products reduce to the first factor
    CHECK(qv::qpoch_inf(Cx(0.3, 0.0), zero).real() == doctest::Approx(0.7).epsilon(1e-15));
}
