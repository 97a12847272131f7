#include "qv/formal/oracle.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>

#include "qv/errors.hpp"

namespace qv::formal {

namespace {

void check_order(std::size_t K) {
    if (K == 0) throw std::invalid_argument("oracle: order must be positive");
    if (K > kMaxOrder)
        throw resource_error("oracle: order " + std::to_string(K) + " exceeds the cap " +
                             std::to_string(kMaxOrder));
}

bool present(const GradedParam& g) { return g.r != 0; }

GradedParam gmul(const GradedParam& a, const GradedParam& b) {
    if (!present(a) || !present(b)) return GradedParam{rat(0), 1};
    return GradedParam{Rat(a.r * b.r), a.m + b.m};
}

GradedParam gneg(const GradedParam& a) {
    if (!present(a)) return a;
    return GradedParam{Rat(-a.r), a.m};
}

struct Params6 {
    GradedParam a, b, c, d, f, g;
};

std::size_t oracle_arity(IdentityId id) {
    switch (id) {
    case IdentityId::AWsub1:
    case IdentityId::AWsub2:
    case IdentityId::AWsub3:
    case IdentityId::AW1p: return 1;
    case IdentityId::AW2p: return 2;
    case IdentityId::AW3p: return 3;
    case IdentityId::AW: return 4;
    case IdentityId::ISV: return 5;
    case IdentityId::Prop6: return 6;
    default:
        throw std::invalid_argument("exact oracle does not support id '" +
                                    std::string(to_string(id)) + "'");
    }
}

Params6 splay(IdentityId id, const std::vector<GradedParam>& gp) {
    const std::size_t arity = oracle_arity(id);
    if (gp.size() > arity)
        throw std::invalid_argument("oracle: too many graded parameters for '" +
                                    std::string(to_string(id)) + "'");
    Params6 P;
    GradedParam* slots[6] = {&P.a, &P.b, &P.c, &P.d, &P.f, &P.g};
    for (std::size_t i = 0; i < gp.size(); ++i) {
        if (present(gp[i]) && gp[i].m < 1)
            throw std::invalid_argument("oracle: present parameters require grade m >= 1");
        *slots[i] = gp[i];
    }
    return P;
}

PSeries qq_inf(std::size_t K) { return poch_inf_series(rat(1), 2, K); }

PSeries gpoch(const GradedParam& x, std::size_t K) {
    if (!present(x)) return PSeries::one(K);
    return poch_inf_series(x.r, x.m, K);
}

// sum_k prod_u (u;q)_k / ((q;q)_k prod_l (l;q)_k) z^k over graded values;
// absent entries contribute the factor 1, absent z makes the sum 1.
PSeries phi_series(const std::vector<GradedParam>& uppers,
                   const std::vector<GradedParam>& lowers, const GradedParam& z,
                   std::size_t K) {
    PSeries acc = PSeries::one(K);
    if (!present(z)) return acc;
    if (z.m < 1) throw std::invalid_argument("phi_series: argument must be graded");
    PSeries term = PSeries::one(K);
    for (std::size_t k = 0; k <= K; ++k) {
        for (const auto& u : uppers)
            if (present(u)) term.mul_one_minus(u.r, u.m + 2 * k);
        term *= PSeries::geometric(rat(1), 2 * (k + 1), K);
        for (const auto& l : lowers)
            if (present(l)) term *= PSeries::geometric(l.r, l.m + 2 * k, K);
        term = term.shifted(z.m);
        term.scale(z.r);
        if (term.is_zero()) return acc;
        acc += term;
    }
    return acc;
}

GradedParam shift_q(const GradedParam& x, std::size_t n) {
    if (!present(x)) return x;
    return GradedParam{x.r, x.m + 2 * static_cast<unsigned>(n)};
}

PSeries prop6_half_series(const Params6& P, const GradedParam& f, const GradedParam& g,
                          std::size_t K) {
    const GradedParam ab = gmul(P.a, P.b), ac = gmul(P.a, P.c), ad = gmul(P.a, P.d);
    const GradedParam bc = gmul(P.b, P.c), bd = gmul(P.b, P.d), cd = gmul(P.c, P.d);
    const GradedParam af = gmul(P.a, f), bf = gmul(P.b, f), cf = gmul(P.c, f),
                      df = gmul(P.d, f);
    const GradedParam abcd = gmul(ab, cd), abcf = gmul(ab, cf);
    const GradedParam fg = gmul(f, g);
    const Rat r_gf = Rat(g.r / f.r); // grades are equal, so g/f has grade 0

    PSeries den = qq_inf(K);
    for (const GradedParam& x : {ab, ac, ad, af, bc, bd, bf, cd, cf, fg})
        den *= gpoch(x, K);
    den *= poch_inf_series(r_gf, 0, K);
    PSeries pref = PSeries::constant(rat(2), K) * gpoch(abcd, K) * gpoch(abcf, K) *
                   den.reciprocal();

    const Rat r_qfg = Rat(f.r / g.r); // q f/g has grade 2
    PSeries acc(K);
    PSeries coef = PSeries::one(K);
    for (std::size_t n = 0; !coef.is_zero(); ++n) {
        acc += coef * phi_series({ab, ac, bc}, {abcd, shift_q(abcf, n)},
                                 shift_q(df, n), K);
        for (const GradedParam& x : {af, bf, cf})
            if (present(x)) coef.mul_one_minus(x.r, x.m + 2 * n);
        coef *= PSeries::geometric(rat(1), 2 * (n + 1), K);
        coef *= PSeries::geometric(r_qfg, 2 + 2 * n, K);
        if (present(abcf)) coef *= PSeries::geometric(abcf.r, abcf.m + 2 * n, K);
        coef = coef.shifted(2);
    }
    return pref * acc;
}

} // namespace

LaurentPSeries expand_numerator_factor(const Rat& r, unsigned m, std::size_t order) {
    check_order(order);
    const long D = static_cast<long>(order) + 2;
    LaurentPSeries out(D, order);
    out.term(0) = PSeries::one(order);
    if (r == 0) return out;
    if (m == 0 && !(r == 1 || r == -1))
        throw std::invalid_argument(
            "expand_numerator_factor: an ungraded parameter must be +1 or -1");
    Rat rk(1);
    for (std::size_t k = 1; static_cast<long>(k) <= D; ++k) {
        const std::size_t grade = k * (k - 1) + k * static_cast<std::size_t>(m);
        if (grade >= order) break;
        rk *= r;
        Rat c = rk;
        if (k % 2) c = -c;
        PSeries coeff = inv_q_factorial(k, order).shifted(grade);
        coeff.scale(c);
        out.term(static_cast<long>(k)) = std::move(coeff);
    }
    return out;
}

LaurentPSeries expand_denominator_factor(const Rat& r, unsigned m, std::size_t order) {
    check_order(order);
    const long D = static_cast<long>(order) + 2;
    LaurentPSeries out(D, order);
    out.term(0) = PSeries::one(order);
    if (r == 0) return out;
    if (m == 0)
        throw std::invalid_argument(
            "expand_denominator_factor: grading (m >= 1) is mandatory");
    Rat rk(1);
    for (std::size_t k = 1; static_cast<long>(k) <= D; ++k) {
        const std::size_t grade = k * static_cast<std::size_t>(m);
        if (grade >= order) break;
        rk *= r;
        PSeries coeff = inv_q_factorial(k, order).shifted(grade);
        coeff.scale(rk);
        out.term(static_cast<long>(k)) = std::move(coeff);
    }
    return out;
}

PSeries inv_q_factorial(std::size_t k, std::size_t order) {
    check_order(order);
    static std::mutex mu;
    static std::map<std::size_t, std::vector<PSeries>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& v = cache[order];
    if (v.empty()) v.push_back(PSeries::one(order));
    while (v.size() <= k) {
        const std::size_t j = v.size();
        // 1/(q;q)_j = 1/(q;q)_{j-1} * 1/(1 - q^j)
        v.push_back(v.back() * PSeries::geometric(rat(1), 2 * j, order));
    }
    return v[k];
}

PSeries poch_inf_series(const Rat& r, unsigned s, std::size_t order) {
    check_order(order);
    PSeries out = PSeries::one(order);
    if (r == 0) return out;
    std::size_t e = s;
    if (s == 0) {
        if (r == 1) throw std::domain_error("poch_inf_series: (1;q)_inf vanishes");
        out.scale(Rat(1 - r));
        e = 2;
    }
    for (; e < order; e += 2) out.mul_one_minus(r, e);
    return out;
}

PSeries constant_term_integral(IdentityId id, const std::vector<GradedParam>& gparams,
                               std::size_t order) {
    check_order(order);
    const Params6 P = splay(id, gparams);
    const long D = static_cast<long>(order) + 2;
    LaurentPSeries prod = LaurentPSeries::unit(D, order);
    auto mul_pair = [&](const LaurentPSeries& e) {
        prod *= e;
        prod *= e.conjugated();
    };
    auto mul_num = [&](const Rat& r, unsigned m) {
        mul_pair(expand_numerator_factor(r, m, order));
    };
    auto mul_den = [&](const GradedParam& g) {
        if (present(g)) mul_pair(expand_denominator_factor(g.r, g.m, order));
    };
    switch (id) {
    case IdentityId::AWsub1:
        mul_num(rat(1), 1);
        break;
    case IdentityId::AWsub2:
        mul_num(rat(1), 1);
        mul_num(rat(-1), 1);
        break;
    case IdentityId::AWsub3:
        mul_num(rat(1), 0);
        mul_num(rat(1), 1);
        mul_num(rat(-1), 1);
        break;
    default: // the full weight h(x; 1, -1, p, -p)
        mul_num(rat(1), 0);
        mul_num(rat(-1), 0);
        mul_num(rat(1), 1);
        mul_num(rat(-1), 1);
        break;
    }
    for (const GradedParam* g : {&P.a, &P.b, &P.c, &P.d, &P.f, &P.g}) mul_den(*g);
    return prod.term(0);
}

PSeries rhs_pseries(IdentityId id, const std::vector<GradedParam>& gparams,
                    std::size_t order) {
    check_order(order);
    const std::size_t K = order;
    const Params6 P = splay(id, gparams);
    const GradedParam ab = gmul(P.a, P.b), ac = gmul(P.a, P.c), ad = gmul(P.a, P.d);
    const GradedParam bc = gmul(P.b, P.c), bd = gmul(P.b, P.d), cd = gmul(P.c, P.d);
    const GradedParam abcd = gmul(ab, cd);
    switch (id) {
    case IdentityId::AWsub1: {
        const GradedParam pa =
            present(P.a) ? GradedParam{P.a.r, P.a.m + 1} : GradedParam{rat(0), 1};
        PSeries den = qq_inf(K) * gpoch(gmul(P.a, P.a), K);
        return gpoch(pa, K) * gpoch(pa, K) * den.reciprocal();
    }
    case IdentityId::AWsub2: {
        PSeries den = qq_inf(K) * gpoch(P.a, K) * gpoch(gneg(P.a), K);
        return poch_inf_series(rat(1), 1, K) * poch_inf_series(rat(-1), 1, K) *
               den.reciprocal();
    }
    case IdentityId::AWsub3: {
        PSeries den = qq_inf(K) * gpoch(gneg(P.a), K);
        return PSeries::constant(rat(2), K) * den.reciprocal();
    }
    case IdentityId::AW1p:
        return PSeries::constant(rat(2), K) * qq_inf(K).reciprocal();
    case IdentityId::AW2p: {
        PSeries den = qq_inf(K) * gpoch(ab, K);
        return PSeries::constant(rat(2), K) * den.reciprocal();
    }
    case IdentityId::AW3p: {
        PSeries den = qq_inf(K) * gpoch(ab, K) * gpoch(ac, K) * gpoch(bc, K);
        return PSeries::constant(rat(2), K) * den.reciprocal();
    }
    case IdentityId::AW: {
        PSeries den = qq_inf(K);
        for (const GradedParam& x : {ab, ac, ad, bc, bd, cd}) den *= gpoch(x, K);
        return PSeries::constant(rat(2), K) * gpoch(abcd, K) * den.reciprocal();
    }
    case IdentityId::ISV: {
        const GradedParam af = gmul(P.a, P.f), bf = gmul(P.b, P.f), cf = gmul(P.c, P.f),
                          df = gmul(P.d, P.f);
        const GradedParam abcf = gmul(ab, cf);
        PSeries den = qq_inf(K);
        for (const GradedParam& x : {ab, ac, ad, af, bc, bd, bf, cd, cf})
            den *= gpoch(x, K);
        return PSeries::constant(rat(2), K) * gpoch(abcd, K) * gpoch(abcf, K) *
               den.reciprocal() * phi_series({ab, ac, bc}, {abcd, abcf}, df, K);
    }
    case IdentityId::Prop6: {
        if (!present(P.f) || !present(P.g))
            throw std::invalid_argument("Prop6 oracle requires f and g");
        if (P.f.m != P.g.m)
            throw std::invalid_argument(
                "Prop6 oracle requires equal grades for f and g (g/f must have grade 0)");
        if (P.f.r == P.g.r)
            throw std::invalid_argument(
                "Prop6 oracle requires different leading rationals for f and g "
                "((g/f;q)_inf must be a unit)");
        return prop6_half_series(P, P.f, P.g, K) + prop6_half_series(P, P.g, P.f, K);
    }
    default:
        throw std::invalid_argument("rhs_pseries: unsupported id");
    }
}

} // namespace qv::formal
