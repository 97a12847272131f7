#include "qv/harness/registry.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "qv/awkernel.hpp"
#include "qv/errors.hpp"
#include "qv/qhyper.hpp"
#include "qv/qpochhammer.hpp"
#include "qv/quadrature.hpp"

namespace qv::harness {

namespace {

Cx P(const ParamMap& pm, const char* n) { return require_param(pm, n); }

AwParams aw_from(const ParamMap& pm) {
    AwParams par;
    if (const Cx* v = find_param(pm, "a")) par.a = *v;
    if (const Cx* v = find_param(pm, "b")) par.b = *v;
    if (const Cx* v = find_param(pm, "c")) par.c = *v;
    if (const Cx* v = find_param(pm, "d")) par.d = *v;
    if (const Cx* v = find_param(pm, "f")) par.f = *v;
    if (const Cx* v = find_param(pm, "g")) par.g = *v;
    if (const Cx* v = find_param(pm, "mu")) par.mu = *v;
    return par;
}

using Admissible = std::function<std::optional<std::string>(const ParamMap&, const QContext&)>;
using Draw = std::function<ParamMap(Sampler&, const QContext&)>;

// Rejection sampling against the entry's own admissibility predicate.
Draw make_draw(std::vector<ParamRange> ranges, Admissible adm) {
    return [ranges = std::move(ranges), adm = std::move(adm)](Sampler& s,
                                                             const QContext& ctx) -> ParamMap {
        for (int tries = 0; tries < 20000; ++tries) {
            ParamMap pm;
            pm.reserve(ranges.size());
            for (const auto& r : ranges)
                pm.emplace_back(r.name, s.draw(r.min_mod, r.max_mod, r.complex_phase));
            if (!adm || !adm(pm, ctx)) return pm;
        }
        throw std::runtime_error("sampler: admissibility rejection cap reached");
    };
}

// First lattice violation among labeled values, as a predicate name.
std::optional<std::string> pole_violation(
    std::initializer_list<std::pair<const char*, Cx>> exprs, const QContext& ctx) {
    for (const auto& e : exprs)
        if (!pole_clear(e.second, ctx.q, 0.05))
            return std::string("pole guard: ") + e.first + " near the q^-m lattice";
    return std::nullopt;
}

std::optional<std::string> check_omega(const ParamMap& pm) {
    Cx w = P(pm, "omega");
    long v = std::lround(w.real());
    if (w.imag() != 0.0 || static_cast<double>(v) != w.real() || v < 1 || v > 3)
        return "omega must be 1, 2, or 3";
    return std::nullopt;
}

struct SeriesProbe {
    Cx value;
    double kappa;  // sum_k |t_k| / |sum_k t_k|: internal cancellation of the series
};

SeriesProbe finish_probe(Cx sum, double sum_abs) {
    SeriesProbe out;
    out.value = sum;
    double denom = std::abs(sum);
    out.kappa = (denom > 0.0 && std::isfinite(denom))
                    ? sum_abs / denom
                    : std::numeric_limits<double>::infinity();
    return out;
}

// Walks a balanced (r = s+1) basic hypergeometric term recurrence once,
// tracking both the sum and the sum of term moduli.  kappa bounds the relative
// accuracy double-precision summation can reach on the series (roughly kappa
// times machine epsilon is lost), so admissibility predicates use it to turn
// away draws whose series cancel internally.
SeriesProbe probe_phi(const std::vector<Cx>& up, const std::vector<Cx>& lo, Cx z,
                      const QContext& ctx) {
    Cx term(1.0, 0.0), sum(0.0, 0.0), qk(1.0, 0.0);
    double sum_abs = 0.0;
    for (std::size_t k = 0; k < ctx.max_terms; ++k) {
        sum += term;
        sum_abs += std::abs(term);
        Cx num(1.0, 0.0);
        for (Cx u : up) num *= Cx(1.0, 0.0) - u * qk;
        Cx den = Cx(1.0, 0.0) - ctx.q * qk;
        for (Cx l : lo) den *= Cx(1.0, 0.0) - l * qk;
        term *= num / den * z;
        qk *= ctx.q;
        if (k > 8 && std::abs(term) <= 1e-16 * std::max(1.0, sum_abs)) break;
    }
    return finish_probe(sum, sum_abs);
}

// Very-well-poised series in the eval_w parameterization.
SeriesProbe probe_w(Cx a1, const std::vector<Cx>& extras, Cx z, const QContext& ctx) {
    Cx sa = std::sqrt(a1);
    std::vector<Cx> up = {a1, ctx.q * sa, -ctx.q * sa};
    std::vector<Cx> lo = {sa, -sa};
    for (Cx x : extras) {
        up.push_back(x);
        lo.push_back(ctx.q * a1 / x);
    }
    return probe_phi(up, lo, z, ctx);
}

// Very-well-poised series with the quadratic q-power in the terms.
SeriesProbe probe_vwp_quadratic(Cx a1, const std::vector<Cx>& extras, Cx z,
                                const QContext& ctx) {
    Cx term(1.0, 0.0), sum(0.0, 0.0), qk(1.0, 0.0), q2k(1.0, 0.0);
    double sum_abs = 0.0;
    const Cx q = ctx.q;
    for (std::size_t k = 0; k < ctx.max_terms; ++k) {
        sum += term;
        sum_abs += std::abs(term);
        Cx num = (Cx(1.0, 0.0) - a1 * q2k * q * q) * (Cx(1.0, 0.0) - a1 * qk);
        Cx den = (Cx(1.0, 0.0) - a1 * q2k) * (Cx(1.0, 0.0) - q * qk);
        for (Cx x : extras) {
            num *= Cx(1.0, 0.0) - x * qk;
            den *= Cx(1.0, 0.0) - (q * a1 / x) * qk;
        }
        term *= num / den * (-z) * qk;
        qk *= q;
        q2k *= q * q;
        if (k > 8 && std::abs(term) <= 1e-16 * std::max(1.0, sum_abs)) break;
    }
    return finish_probe(sum, sum_abs);
}

EvalOutput eval_weighted_integral(IdentityId iid, const ParamMap& pm, const QContext& ctx,
                                  const EvalOptions& opt) {
    AwParams par = aw_from(pm);
    auto iv = integrate_even_periodic(
        [&](double th) { return integrand(iid, kernel_point(th), par, ctx); }, opt.quad_tol,
        opt.max_nodes);
    EvalOutput out;
    out.lhs = iv.value;
    out.rhs = rhs_closed(iid, par, ctx);
    out.lhs_err_estimate = iv.err_estimate;
    return out;
}

// Builds the kernel-ratio numerator shared by the two expansion lemmas:
// the full weight, optionally divided by one or two extra kernel factors.
std::function<Cx(const KernelPoint&)> make_numerator(int variant, Cx c1, Cx c2,
                                                     const QContext& ctx) {
    return [variant, c1, c2, &ctx](const KernelPoint& pt) {
        Cx w = aw_weight(pt, ctx);
        if (variant >= 2) w /= kernel_h(pt, c1, ctx);
        if (variant >= 3) w /= kernel_h(pt, c2, ctx);
        return w;
    };
}

EvalOutput eval_lemma_a(const ParamMap& pm, const QContext& ctx, const EvalOptions& opt) {
    Cx lam = P(pm, "lambda"), eta = P(pm, "eta");
    int variant = static_cast<int>(std::lround(P(pm, "omega").real()));
    auto num = make_numerator(variant, P(pm, "c1"), P(pm, "c2"), ctx);

    auto base = integrate_even_periodic(
        [&](double th) {
            KernelPoint pt = kernel_point(th);
            return num(pt) / (kernel_h(pt, lam, ctx) * kernel_h(pt, eta, ctx));
        },
        opt.quad_tol, opt.max_nodes);

    // The two halves can exceed their sum by a few orders of magnitude when
    // eta/lambda sits near the q^-m lattice (the draw bounds that distance, not
    // the amplification itself), so the per-term integrals and the tail cutoff
    // get a tighter budget than the identity-level quadrature tolerance.
    const double term_tol = std::max(opt.quad_tol * 1e-2, 1e-13);
    const QContext tight(ctx.q, std::min(ctx.tol_tail, 1e-13), ctx.max_terms);

    // One symmetric half: 1/((l1 l2, l2/l1;q)_inf) *
    //   sum_k q^k / ((q, q l1/l2;q)_k) * integral num / h(x; l1 q^k).
    auto half = [&](Cx l1, Cx l2) {
        Cx pref = Cx(1.0, 0.0) / qpoch_multi({l1 * l2, l2 / l1}, ctx);
        Cx ratio_base = ctx.q * l1 / l2;
        Cx coef(1.0, 0.0);
        Cx qk(1.0, 0.0);
        auto term = [&](std::size_t) -> Cx {
            Cx shifted = l1 * qk;
            auto iv = integrate_even_periodic(
                [&](double th) {
                    KernelPoint pt = kernel_point(th);
                    return num(pt) / kernel_h(pt, shifted, ctx);
                },
                term_tol, opt.max_nodes);
            Cx t = coef * iv.value;
            Cx d1 = Cx(1.0, 0.0) - ctx.q * qk;
            Cx d2 = Cx(1.0, 0.0) - ratio_base * qk;
            if (std::abs(d1) < 1e-13 || std::abs(d2) < 1e-13)
                throw pole_error("kernel-split half sum: lower factor at a lattice pole");
            coef *= ctx.q / (d1 * d2);
            qk *= ctx.q;
            return t;
        };
        return pref * sum_with_geometric_tail(term, tight, "kernel-split half sum");
    };

    EvalOutput out;
    out.lhs = base.value;
    out.rhs = half(lam, eta) + half(eta, lam);
    out.lhs_err_estimate = base.err_estimate;
    return out;
}

EvalOutput eval_lemma_b(const ParamMap& pm, const QContext& ctx, const EvalOptions& opt) {
    Cx lam = P(pm, "lambda"), eta = P(pm, "eta");
    int variant = static_cast<int>(std::lround(P(pm, "omega").real()));
    auto num = make_numerator(variant, P(pm, "c1"), P(pm, "c2"), ctx);

    auto base = integrate_even_periodic(
        [&](double th) {
            KernelPoint pt = kernel_point(th);
            return num(pt) * kernel_h(pt, lam, ctx) / kernel_h(pt, eta, ctx);
        },
        opt.quad_tol, opt.max_nodes);

    // (lam eta, lam/eta;q)_inf * sum_k (lam/eta)^k / ((q, lam eta;q)_k)
    //   * integral num / h(x; eta q^k); needs |lam/eta| < 1.
    Cx pref = qpoch_multi({lam * eta, lam / eta}, ctx);
    Cx ratio = lam / eta;
    Cx coef(1.0, 0.0);
    Cx qk(1.0, 0.0);
    auto term = [&](std::size_t) -> Cx {
        Cx shifted = eta * qk;
        auto iv = integrate_even_periodic(
            [&](double th) {
                KernelPoint pt = kernel_point(th);
                return num(pt) / kernel_h(pt, shifted, ctx);
            },
            opt.quad_tol, opt.max_nodes);
        Cx t = coef * iv.value;
        Cx d1 = Cx(1.0, 0.0) - ctx.q * qk;
        Cx d2 = Cx(1.0, 0.0) - lam * eta * qk;
        coef *= ratio / (d1 * d2);
        qk *= ctx.q;
        return t;
    };

    EvalOutput out;
    out.lhs = base.value;
    out.rhs = pref * sum_with_geometric_tail(term, ctx, "kernel-transplant sum");
    out.lhs_err_estimate = base.err_estimate;
    return out;
}

LiuParams liu_from(const ParamMap& pm, const QContext& ctx) {
    return make_liu_params(P(pm, "a"), P(pm, "b"), P(pm, "c"), P(pm, "d"), P(pm, "f"),
                           P(pm, "r"), P(pm, "s"), P(pm, "t"), P(pm, "z"), P(pm, "beta"),
                           P(pm, "delta"), ctx);
}

std::vector<IdentityEntry> build_registry() {
    std::vector<IdentityEntry> reg;

    auto abcd_bound = [](const ParamMap& pm, const QContext& ctx) -> std::optional<std::string> {
        Cx abcd = P(pm, "a") * P(pm, "b") * P(pm, "c") * P(pm, "d");
        if (std::abs(abcd / ctx.q) > 0.9) return "product bound |abcd/q| <= 0.9";
        return std::nullopt;
    };

    auto integral_entry = [&](std::string id, IdentityId iid, std::vector<ParamRange> ranges,
                              double tol, std::size_t samples, Admissible adm) {
        IdentityEntry e;
        e.id = std::move(id);
        e.kind = IdentityEntry::Kind::integral;
        e.params = ranges;
        e.default_tol = tol;
        e.default_samples = samples;
        e.admissible = adm;
        e.draw = make_draw(std::move(ranges), adm);
        e.eval = [iid](const ParamMap& pm, const QContext& ctx, const EvalOptions& opt) {
            return eval_weighted_integral(iid, pm, ctx, opt);
        };
        reg.push_back(std::move(e));
    };

    ParamRange pa{"a", 0.05, 0.6, true, true};
    ParamRange pb{"b", 0.05, 0.6, true, true};
    ParamRange pc{"c", 0.05, 0.6, true, true};
    ParamRange pd{"d", 0.05, 0.6, true, true};
    ParamRange pf{"f", 0.05, 0.6, true, true};

    integral_entry("AW", IdentityId::AW, {pa, pb, pc, pd}, 1e-9, 50, abcd_bound);
    integral_entry("AW-sub1", IdentityId::AWsub1, {pa}, 1e-9, 20, nullptr);
    integral_entry("AW-sub2", IdentityId::AWsub2, {pa}, 1e-9, 20, nullptr);
    integral_entry("AW-sub3", IdentityId::AWsub3, {pa}, 1e-9, 20, nullptr);
    integral_entry("AW-1p", IdentityId::AW1p, {pa}, 1e-9, 20, nullptr);
    integral_entry("AW-2p", IdentityId::AW2p, {pa, pb}, 1e-9, 20, nullptr);
    integral_entry("AW-3p", IdentityId::AW3p, {pa, pb, pc}, 1e-9, 20, nullptr);
    integral_entry("ISV", IdentityId::ISV, {pa, pb, pc, pd, pf}, 1e-8, 30, abcd_bound);

    {
        // The closed form's very-well-poised base is a1 = abc mu / q; keep it
        // off the unit circle and its square root away from 1.
        auto nr_adm = [](const ParamMap& pm, const QContext& ctx) -> std::optional<std::string> {
            Cx prod = P(pm, "a") * P(pm, "b") * P(pm, "c") * P(pm, "mu");
            if (std::abs(prod / ctx.q) > 0.9) return "product bound |abc mu/q| <= 0.9";
            return std::nullopt;
        };
        std::vector<ParamRange> ranges = {{"a", 0.15, 0.6, true, true},
                                          {"b", 0.15, 0.6, true, true},
                                          {"c", 0.15, 0.6, true, true},
                                          {"d", 0.15, 0.6, true, true},
                                          {"f", 0.15, 0.6, true, true},
                                          {"mu", 0.15, 0.6, true, true}};
        integral_entry("NR", IdentityId::NR, std::move(ranges), 1e-8, 10, nr_adm);
    }

    {
        IdentityEntry e;
        e.id = "Liu";
        e.kind = IdentityEntry::Kind::integral;
        for (const char* n : {"a", "b", "c", "d", "f", "r", "s", "t", "z", "beta", "delta"})
            e.params.push_back({n, 0.05, 0.4, true, true});
        e.default_tol = 1e-7;
        e.default_samples = 15;
        e.admissible = nullptr;
        e.draw = make_draw(e.params, nullptr);
        e.eval = [](const ParamMap& pm, const QContext& ctx, const EvalOptions& opt) {
            LiuParams lp = liu_from(pm, ctx);
            auto iv = integrate_even_periodic(
                [&](double th) { return integrand(IdentityId::Liu, kernel_point(th), lp, ctx); },
                opt.quad_tol, opt.max_nodes);
            EvalOutput out;
            out.lhs = iv.value;
            out.rhs = liu_rhs_double_sum(lp, ctx);
            out.lhs_err_estimate = iv.err_estimate;
            return out;
        };
        reg.push_back(std::move(e));
    }

    {
        // Six-denominator expansion: both kernel slots enter through the
        // ratios g/f and q f/g, so both must stay well off the lattice --
        // the (g/f;q)_inf prefactors inflate both halves, which then cancel
        // against each other, so the guard band here is twice the usual.
        auto adm = [](const ParamMap& pm, const QContext& ctx) -> std::optional<std::string> {
            Cx f = P(pm, "f"), g = P(pm, "g");
            if (!pole_clear(g / f, ctx.q, 0.1) || !pole_clear(f / g, ctx.q, 0.1))
                return "pole guard: f/g within 0.1 of the q^-m lattice";
            // The halves cancel; their size is dominated by the product
            // prefactors (the expansion sums are order one), so bound the
            // prefactor mass against the actual two-half sum.
            Cx a = P(pm, "a"), b = P(pm, "b"), c = P(pm, "c"), d = P(pm, "d");
            try {
                auto pref_mag = [&](Cx ff, Cx gg) {
                    Cx ab = a * b, ac = a * c, ad = a * d, bc = b * c, bd = b * d, cd = c * d;
                    return std::abs(
                        qpoch_multi({ab * cd, ab * c * ff}, ctx) /
                        qpoch_multi({ctx.q, ab, ac, ad, a * ff, bc, bd, b * ff, cd, c * ff,
                                     ff * gg, gg / ff},
                                    ctx));
                };
                double parts = 6.283185307179586 * (pref_mag(f, g) + pref_mag(g, f));
                Cx sum = rhs_closed(IdentityId::Prop6, aw_from(pm), ctx);
                if (!(std::abs(sum) * 2e4 >= parts))
                    return "conditioning bound (|half_f|+|half_g|)/|value| <= 2e4";
            } catch (const std::exception&) {
                return "conditioning estimate failed";
            }
            return std::nullopt;
        };
        IdentityEntry e;
        e.id = "Prop6";
        e.kind = IdentityEntry::Kind::integral;
        e.params = {pa, pb, pc, pd, {"f", 0.15, 0.6, true, true}, {"g", 0.15, 0.6, true, true}};
        e.default_tol = 1e-8;
        e.default_samples = 15;
        e.admissible = adm;
        e.draw = make_draw(e.params, adm);
        e.eval = [](const ParamMap& pm, const QContext& ctx, const EvalOptions& opt) {
            AwParams par = aw_from(pm);
            auto iv = integrate_even_periodic(
                [&](double th) { return integrand(IdentityId::Prop6, kernel_point(th), par, ctx); },
                opt.quad_tol, opt.max_nodes);
            // The two halves of the closed form can exceed their sum by four
            // or more orders of magnitude, so they get the tightest tail the
            // arithmetic supports regardless of the ambient budget.
            QContext tight(ctx.q, 1e-14, ctx.max_terms);
            EvalOutput out;
            out.lhs = iv.value;
            out.rhs = rhs_closed(IdentityId::Prop6, par, tight);
            out.lhs_err_estimate = iv.err_estimate;
            return out;
        };
        reg.push_back(std::move(e));
    }

    {
        IdentityEntry e;
        e.id = "liu-special";
        e.kind = IdentityEntry::Kind::transformation;
        e.params = {{"a", 0.15, 0.6, true, true},    {"b", 0.15, 0.6, true, true},
                    {"c", 0.15, 0.6, true, true},    {"d", 0.15, 0.6, true, true},
                    {"f", 0.15, 0.6, true, true},    {"mu", 0.0, 0.07, true, true},
                    {"beta", 0.05, 0.6, true, true}, {"delta", 0.05, 0.6, true, true}};
        e.default_tol = 1e-8;
        e.default_samples = 10;
        e.admissible = [](const ParamMap& pm, const QContext&) -> std::optional<std::string> {
            Cx prod = P(pm, "a") * P(pm, "b") * P(pm, "c") * P(pm, "d") * P(pm, "f");
            if (std::abs(prod) < 1e-12) return "a b c d f must be nonzero";
            if (std::abs(P(pm, "mu") / prod) > 0.9)
                return "specialization bound |mu/(a b c d f)| <= 0.9";
            return std::nullopt;
        };
        e.draw = [](Sampler& s, const QContext&) -> ParamMap {
            ParamMap pm;
            for (const char* n : {"a", "b", "c", "d", "f"})
                pm.emplace_back(n, s.draw(0.15, 0.6, true));
            Cx prod = pm[0].second * pm[1].second * pm[2].second * pm[3].second * pm[4].second;
            // mu rides the parameter product so the specialized argument
            // mu/(abcdf) keeps a modulus in [0.1, 0.8).
            Cx u = s.draw(0.1, 0.8, true);
            pm.emplace_back("mu", u * std::abs(prod));
            pm.emplace_back("beta", s.draw(0.05, 0.6, true));
            pm.emplace_back("delta", s.draw(0.05, 0.6, true));
            return pm;
        };
        e.eval = [](const ParamMap& pm, const QContext& ctx, const EvalOptions&) {
            Cx a = P(pm, "a"), b = P(pm, "b"), c = P(pm, "c"), d = P(pm, "d"), f = P(pm, "f");
            Cx mu = P(pm, "mu"), beta = P(pm, "beta"), delta = P(pm, "delta");
            AwParams ap;
            ap.a = a;
            ap.b = b;
            ap.c = c;
            ap.d = d;
            ap.f = f;
            ap.mu = mu;
            LiuParams lp = make_liu_params(a, b, c, d, f, a * mu, beta, delta,
                                           mu / (a * b * c * d * f), beta, delta, ctx);
            EvalOutput out;
            out.lhs = rhs_closed(IdentityId::LiuSpecial, ap, ctx);
            out.rhs = qpoch_multi({a * mu, mu / a}, ctx) * liu_rhs_double_sum(lp, ctx);
            return out;
        };
        reg.push_back(std::move(e));
    }

    {
        IdentityEntry e;
        e.id = "liu-rearrange";
        e.kind = IdentityEntry::Kind::rearrangement;
        for (const char* n : {"a", "b", "c", "d", "f", "r", "s", "t", "z", "beta", "delta"})
            e.params.push_back({n, 0.05, 0.6, true, true});
        e.default_tol = 1e-9;
        e.default_samples = 25;
        e.admissible = nullptr;
        e.draw = make_draw(e.params, nullptr);
        e.eval = [](const ParamMap& pm, const QContext& ctx, const EvalOptions&) {
            LiuParams lp = liu_from(pm, ctx);
            EvalOutput out;
            out.lhs = liu_rhs_double_sum(lp, ctx);
            out.rhs = liu_rhs_relation_form(lp, ctx);
            return out;
        };
        reg.push_back(std::move(e));
    }

    {
        IdentityEntry e;
        e.id = "lemma-a";
        e.kind = IdentityEntry::Kind::integral;
        e.params = {{"lambda", 0.15, 0.6, true, true}, {"eta", 0.15, 0.6, true, true},
                    {"c1", 0.05, 0.6, true, true},     {"c2", 0.05, 0.6, true, true},
                    {"omega", 1.0, 3.0, false, false}};
        e.default_tol = 1e-8;
        e.default_samples = 30;
        e.admissible = [](const ParamMap& pm, const QContext& ctx) -> std::optional<std::string> {
            if (auto bad = check_omega(pm)) return bad;
            Cx lam = P(pm, "lambda"), eta = P(pm, "eta");
            if (!pole_clear(lam / eta, ctx.q, 0.3) || !pole_clear(eta / lam, ctx.q, 0.3))
                return "pole guard: lambda/eta within 0.3 of the q^-m lattice";
            // The two expansion halves cancel against each other while their
            // per-term integrals all have comparable size, so the achievable
            // accuracy is set by the total coefficient mass of the halves.
            // That mass can grow by q/((1-q^{k+1})|1-(q l1/l2) q^k|) over many
            // consecutive k even when no single factor is near the lattice.
            double mass = 0.0;
            for (int swap = 0; swap < 2; ++swap) {
                Cx l1 = swap ? eta : lam, l2 = swap ? lam : eta;
                double pref = 1.0 / std::abs(qpoch_multi({l1 * l2, l2 / l1}, ctx));
                Cx ratio_base = ctx.q * l1 / l2;
                Cx coef(1.0, 0.0), qk(1.0, 0.0);
                double s = 0.0;
                for (std::size_t k = 0; k < ctx.max_terms; ++k) {
                    s += std::abs(coef);
                    Cx d1 = Cx(1.0, 0.0) - ctx.q * qk;
                    Cx d2 = Cx(1.0, 0.0) - ratio_base * qk;
                    coef *= ctx.q / (d1 * d2);
                    qk *= ctx.q;
                    if (k > 8 && std::abs(coef) <= 1e-12 * std::max(1.0, s)) break;
                }
                mass += pref * s;
            }
            if (!(mass <= 300.0))
                return "conditioning bound: expansion coefficient mass <= 300";
            return std::nullopt;
        };
        e.draw = [adm = e.admissible](Sampler& s, const QContext& ctx) -> ParamMap {
            for (int tries = 0; tries < 20000; ++tries) {
                ParamMap pm;
                pm.emplace_back("lambda", s.draw(0.15, 0.6, true));
                pm.emplace_back("eta", s.draw(0.15, 0.6, true));
                pm.emplace_back("c1", s.draw(0.05, 0.6, true));
                pm.emplace_back("c2", s.draw(0.05, 0.6, true));
                pm.emplace_back("omega", Cx(1.0 + std::floor(3.0 * s.unit()), 0.0));
                if (!adm(pm, ctx)) return pm;
            }
            throw std::runtime_error("sampler: admissibility rejection cap reached");
        };
        e.eval = eval_lemma_a;
        reg.push_back(std::move(e));
    }

    {
        IdentityEntry e;
        e.id = "lemma-b";
        e.kind = IdentityEntry::Kind::integral;
        e.params = {{"lambda", 0.03, 0.48, true, true}, {"eta", 0.3, 0.6, true, true},
                    {"c1", 0.05, 0.6, true, true},      {"c2", 0.05, 0.6, true, true},
                    {"omega", 1.0, 3.0, false, false}};
        e.default_tol = 1e-8;
        e.default_samples = 30;
        e.admissible = [](const ParamMap& pm, const QContext&) -> std::optional<std::string> {
            if (auto bad = check_omega(pm)) return bad;
            if (std::abs(P(pm, "lambda") / P(pm, "eta")) > 0.9)
                return "ratio bound |lambda/eta| <= 0.9";
            return std::nullopt;
        };
        e.draw = [](Sampler& s, const QContext&) -> ParamMap {
            ParamMap pm;
            Cx eta = s.draw(0.3, 0.6, true);
            // lambda is drawn as a contraction of eta so the transplant
            // ratio lambda/eta stays at most 0.8 in modulus.
            Cx w = s.draw(0.1, 0.8, true);
            pm.emplace_back("lambda", w * eta);
            pm.emplace_back("eta", eta);
            pm.emplace_back("c1", s.draw(0.05, 0.6, true));
            pm.emplace_back("c2", s.draw(0.05, 0.6, true));
            pm.emplace_back("omega", Cx(1.0 + std::floor(3.0 * s.unit()), 0.0));
            return pm;
        };
        e.eval = eval_lemma_b;
        reg.push_back(std::move(e));
    }

    {
        IdentityEntry e;
        e.id = "q-gauss";
        e.kind = IdentityEntry::Kind::series;
        e.params = {{"a", 0.1, 0.6, true, false},
                    {"b", 0.1, 0.6, true, false},
                    {"c", 0.0, 0.49, true, true}};
        e.default_tol = 1e-11;
        e.default_samples = 100;
        e.admissible = [](const ParamMap& pm, const QContext& ctx) -> std::optional<std::string> {
            Cx a = P(pm, "a"), b = P(pm, "b"), c = P(pm, "c");
            if (std::abs(a) < 1e-12 || std::abs(b) < 1e-12) return "a and b must be nonzero";
            if (std::abs(c / (a * b)) > 0.9) return "argument bound |c/(ab)| <= 0.9";
            // An alternating series can sum far below its terms when the
            // product value happens to be tiny; the tight tolerance here
            // leaves no room for that amplification.
            try {
                SeriesProbe p = probe_phi({a, b}, {c}, c / (a * b), ctx);
                if (!(p.kappa <= 30.0)) return "conditioning bound sum|t_k|/|sum| <= 30";
            } catch (const std::exception&) {
                return "conditioning estimate failed";
            }
            return std::nullopt;
        };
        e.draw = [adm = e.admissible](Sampler& s, const QContext& ctx) -> ParamMap {
            for (int tries = 0; tries < 20000; ++tries) {
                Cx a = s.draw(0.1, 0.6, true);
                Cx b = s.draw(0.1, 0.6, true);
                // c rides a*b so the series argument c/(ab) has modulus in
                // [0.05, 0.9) regardless of how small a*b came out.
                Cx u = s.draw(0.05, 0.9, true);
                ParamMap pm = {{"a", a}, {"b", b}, {"c", u * a * b}};
                if (!adm(pm, ctx)) return pm;
            }
            throw std::runtime_error("sampler: admissibility rejection cap reached");
        };
        e.eval = [](const ParamMap& pm, const QContext& ctx, const EvalOptions&) {
            Cx a = P(pm, "a"), b = P(pm, "b"), c = P(pm, "c");
            QContext tight(ctx.q, std::min(ctx.tol_tail, 1e-15), ctx.max_terms);
            EvalOutput out;
            out.lhs = eval_phi({{a, b}, {c}, c / (a * b), std::nullopt}, tight);
            out.rhs = closed_form_q_gauss(a, b, c, tight);
            return out;
        };
        reg.push_back(std::move(e));
    }

    {
        IdentityEntry e;
        e.id = "q-binom";
        e.kind = IdentityEntry::Kind::series;
        e.params = {{"a", 0.05, 0.8, true, false}, {"z", 0.05, 0.7, true, true}};
        e.default_tol = 1e-12;
        e.default_samples = 100;
        e.admissible = [](const ParamMap& pm, const QContext& ctx) -> std::optional<std::string> {
            Cx a = P(pm, "a"), z = P(pm, "z");
            if (std::abs(z) > 0.95) return "argument bound |z| <= 0.95";
            try {
                SeriesProbe p = probe_phi({a}, {}, z, ctx);
                if (!(p.kappa <= 30.0)) return "conditioning bound sum|t_k|/|sum| <= 30";
            } catch (const std::exception&) {
                return "conditioning estimate failed";
            }
            return std::nullopt;
        };
        e.draw = make_draw(e.params, e.admissible);
        e.eval = [](const ParamMap& pm, const QContext& ctx, const EvalOptions&) {
            Cx a = P(pm, "a"), z = P(pm, "z");
            QContext tight(ctx.q, std::min(ctx.tol_tail, 1e-15), ctx.max_terms);
            EvalOutput out;
            out.lhs = eval_phi({{a}, {}, z, std::nullopt}, tight);
            out.rhs = closed_form_q_binomial(a, z, tight);
            return out;
        };
        reg.push_back(std::move(e));
    }

    {
        IdentityEntry e;
        e.id = "two-term";
        e.kind = IdentityEntry::Kind::series;
        e.params = {{"a", 0.05, 0.6, true, false},
                    {"b", 0.05, 0.6, true, false},
                    {"c", 0.05, 0.6, true, true}};
        e.default_tol = 1e-10;
        e.default_samples = 50;
        e.admissible = [](const ParamMap& pm, const QContext& ctx) -> std::optional<std::string> {
            Cx a = P(pm, "a"), b = P(pm, "b"), c = P(pm, "c"), q = ctx.q;
            if (auto bad = pole_violation({{"qa/c", q * a / c},
                                           {"qb/c", q * b / c},
                                           {"q^2/c", q * q / c},
                                           {"c/q", c / q}},
                                          ctx))
                return bad;
            // The left side is a sum of two series that can cancel far below
            // their own magnitudes, and each series can cancel internally;
            // certify only points where the value is within three orders of
            // its constituents and the series are internally tame.
            try {
                SeriesProbe p1 = probe_phi({a, b}, {c}, q, ctx);
                SeriesProbe p2 = probe_phi({q * a / c, q * b / c}, {q * q / c}, q, ctx);
                if (!(p1.kappa <= 1e3 && p2.kappa <= 1e3))
                    return "conditioning bound sum|t_k|/|sum| <= 1e3 in each series";
                Cx pref = qpoch_multi({a, b, q / c}, ctx) /
                          qpoch_multi({q * a / c, q * b / c, c / q}, ctx);
                Cx rhs = qpoch_multi({q * a * b / c, q / c}, ctx) /
                         qpoch_multi({q * a / c, q * b / c}, ctx);
                double parts = std::abs(p1.value) + std::abs(pref * p2.value);
                if (!(std::abs(rhs) * 1e3 >= parts))
                    return "conditioning bound (|s1|+|s2|)/|value| <= 1e3";
            } catch (const std::exception&) {
                return "conditioning estimate failed";
            }
            return std::nullopt;
        };
        e.draw = make_draw(e.params, e.admissible);
        e.eval = [](const ParamMap& pm, const QContext& ctx, const EvalOptions&) {
            Cx a = P(pm, "a"), b = P(pm, "b"), c = P(pm, "c"), q = ctx.q;
            QContext tight(ctx.q, std::min(ctx.tol_tail, 1e-15), ctx.max_terms);
            Cx phi1 = eval_phi({{a, b}, {c}, q, std::nullopt}, tight);
            Cx pref = qpoch_multi({a, b, q / c}, tight) /
                      qpoch_multi({q * a / c, q * b / c, c / q}, tight);
            Cx phi2 = eval_phi({{q * a / c, q * b / c}, {q * q / c}, q, std::nullopt}, tight);
            EvalOutput out;
            out.lhs = phi1 + pref * phi2;
            out.rhs = qpoch_multi({q * a * b / c, q / c}, tight) /
                      qpoch_multi({q * a / c, q * b / c}, tight);
            return out;
        };
        reg.push_back(std::move(e));
    }

    {
        IdentityEntry e;
        e.id = "t-3phi2";
        e.kind = IdentityEntry::Kind::transformation;
        for (const char* n : {"a", "b", "c", "d", "e"})
            e.params.push_back({n, 0.15, 0.6, true, true});
        e.default_tol = 1e-10;
        e.default_samples = 50;
        e.admissible = [](const ParamMap& pm, const QContext& ctx) -> std::optional<std::string> {
            Cx a = P(pm, "a"), b = P(pm, "b"), c = P(pm, "c"), d = P(pm, "d"), ee = P(pm, "e");
            Cx q = ctx.q;
            if (std::abs(d / a) > 0.9) return "argument bound |d/a| <= 0.9";
            if (auto bad = pole_violation({{"qa/e", q * a / ee},
                                           {"qb/e", q * b / ee},
                                           {"qc/e", q * c / ee},
                                           {"qd/e", q * d / ee},
                                           {"q^2/e", q * q / ee},
                                           {"e/q", ee / q},
                                           {"qab/e", q * a * b / ee},
                                           {"qac/e", q * a * c / ee}},
                                          ctx))
                return bad;
            // Two cancellation modes limit double-precision accuracy here:
            // s1 and the compensated s2 can cancel against each other, and any
            // one series can cancel internally (terms far larger than its sum).
            try {
                SeriesProbe p1 = probe_phi({a, b, c}, {d, ee}, q, ctx);
                SeriesProbe p2 = probe_phi({q * a / ee, q * b / ee, q * c / ee},
                                           {q * d / ee, q * q / ee}, q, ctx);
                SeriesProbe p3 = probe_phi({a, q * a / ee, q * a * b * c / (d * ee)},
                                           {q * a * b / ee, q * a * c / ee}, d / a, ctx);
                if (!(p1.kappa <= 1e3 && p2.kappa <= 1e3 && p3.kappa <= 1e3))
                    return "conditioning bound sum|t_k|/|sum| <= 1e3 in each series";
                Cx pref2 = qpoch_multi({a, b, c, q * d / ee, q / ee}, ctx) /
                           qpoch_multi({q * a / ee, q * b / ee, q * c / ee, d, ee / q}, ctx);
                Cx prefr = qpoch_multi({q * a * b / ee, q * a * c / ee, d / a, q / ee}, ctx) /
                           qpoch_multi({q * a / ee, q * b / ee, q * c / ee, d}, ctx);
                double parts = std::abs(p1.value) + std::abs(pref2 * p2.value);
                if (!(std::abs(prefr * p3.value) * 1e3 >= parts))
                    return "conditioning bound (|s1|+|s2|)/|value| <= 1e3";
            } catch (const std::exception&) {
                return "conditioning estimate failed";
            }
            return std::nullopt;
        };
        e.draw = make_draw(e.params, e.admissible);
        e.eval = [](const ParamMap& pm, const QContext& ctx, const EvalOptions&) {
            Cx a = P(pm, "a"), b = P(pm, "b"), c = P(pm, "c"), d = P(pm, "d"), ee = P(pm, "e");
            Cx q = ctx.q;
            QContext tight(ctx.q, std::min(ctx.tol_tail, 1e-15), ctx.max_terms);
            Cx s1 = eval_phi({{a, b, c}, {d, ee}, q, std::nullopt}, tight);
            Cx pref2 = qpoch_multi({a, b, c, q * d / ee, q / ee}, tight) /
                       qpoch_multi({q * a / ee, q * b / ee, q * c / ee, d, ee / q}, tight);
            Cx s2 = eval_phi(
                {{q * a / ee, q * b / ee, q * c / ee}, {q * d / ee, q * q / ee}, q, std::nullopt},
                tight);
            Cx prefr = qpoch_multi({q * a * b / ee, q * a * c / ee, d / a, q / ee}, tight) /
                       qpoch_multi({q * a / ee, q * b / ee, q * c / ee, d}, tight);
            Cx s3 = eval_phi({{a, q * a / ee, q * a * b * c / (d * ee)},
                              {q * a * b / ee, q * a * c / ee},
                              d / a,
                              std::nullopt},
                             tight);
            EvalOutput out;
            out.lhs = s1 + pref2 * s2;
            out.rhs = prefr * s3;
            return out;
        };
        reg.push_back(std::move(e));
    }

    {
        IdentityEntry e;
        e.id = "t-vwp";
        e.kind = IdentityEntry::Kind::transformation;
        for (const char* n : {"a", "b", "c", "d", "e"})
            e.params.push_back({n, 0.15, 0.6, true, true});
        e.default_tol = 1e-10;
        e.default_samples = 50;
        e.admissible = [](const ParamMap& pm, const QContext& ctx) -> std::optional<std::string> {
            Cx a = P(pm, "a"), b = P(pm, "b"), c = P(pm, "c"), d = P(pm, "d"), ee = P(pm, "e");
            Cx q = ctx.q;
            if (std::abs(q * a / (d * ee)) > 0.9) return "argument bound |qa/(de)| <= 0.9";
            if (auto bad = pole_violation({{"qa/b", q * a / b},
                                           {"qa/c", q * a / c},
                                           {"qa/d", q * a / d},
                                           {"qa/e", q * a / ee}},
                                          ctx))
                return bad;
            try {
                SeriesProbe pl =
                    probe_vwp_quadratic(a, {b, c, d, ee}, q * q * a * a / (b * c * d * ee), ctx);
                SeriesProbe pr = probe_phi({q * a / (b * c), d, ee}, {q * a / b, q * a / c},
                                           q * a / (d * ee), ctx);
                if (!(pl.kappa <= 1e3 && pr.kappa <= 1e3))
                    return "conditioning bound sum|t_k|/|sum| <= 1e3 in each series";
            } catch (const std::exception&) {
                return "conditioning estimate failed";
            }
            return std::nullopt;
        };
        e.draw = make_draw(e.params, e.admissible);
        e.eval = [](const ParamMap& pm, const QContext& ctx, const EvalOptions&) {
            Cx a = P(pm, "a"), b = P(pm, "b"), c = P(pm, "c"), d = P(pm, "d"), ee = P(pm, "e");
            Cx q = ctx.q;
            QContext tight(ctx.q, std::min(ctx.tol_tail, 1e-15), ctx.max_terms);
            EvalOutput out;
            out.lhs = sum_vwp_quadratic(a, {b, c, d, ee}, q * q * a * a / (b * c * d * ee), tight);
            out.rhs = qpoch_multi({q * a, q * a / (d * ee)}, tight) /
                      qpoch_multi({q * a / d, q * a / ee}, tight) *
                      eval_phi({{q * a / (b * c), d, ee},
                                {q * a / b, q * a / c},
                                q * a / (d * ee),
                                std::nullopt},
                               tight);
            return out;
        };
        reg.push_back(std::move(e));
    }

    {
        IdentityEntry e;
        e.id = "t-8w7";
        e.kind = IdentityEntry::Kind::transformation;
        e.params = {{"a", 0.05, 0.6, true, true}, {"b", 0.15, 0.6, true, true},
                    {"c", 0.15, 0.6, true, true}, {"d", 0.15, 0.6, true, true},
                    {"e", 0.15, 0.6, true, true}, {"f", 0.15, 0.6, true, true}};
        e.default_tol = 1e-9;
        e.default_samples = 25;
        e.admissible = [](const ParamMap& pm, const QContext& ctx) -> std::optional<std::string> {
            Cx a = P(pm, "a"), b = P(pm, "b"), c = P(pm, "c"), d = P(pm, "d");
            Cx ee = P(pm, "e"), f = P(pm, "f"), q = ctx.q;
            if (std::abs(q * q * a * a / (b * c * d * ee * f)) > 0.9)
                return "argument bound |q^2 a^2/(bcdef)| <= 0.9";
            if (std::abs(q * a / (ee * f)) > 0.9) return "argument bound |qa/(ef)| <= 0.9";
            Cx lam = q * a * a / (b * c * d);
            Cx slam = std::sqrt(lam);
            if (auto bad = pole_violation({{"qa/b", q * a / b},
                                           {"qa/c", q * a / c},
                                           {"qa/d", q * a / d},
                                           {"qa/e", q * a / ee},
                                           {"qa/f", q * a / f},
                                           {"q lam", q * lam},
                                           {"q lam/(ef)", q * lam / (ee * f)},
                                           {"q lam/e", q * lam / ee},
                                           {"q lam/f", q * lam / f},
                                           {"sqrt(lam)", slam},
                                           {"-sqrt(lam)", -slam}},
                                          ctx))
                return bad;
            try {
                SeriesProbe pl =
                    probe_w(a, {b, c, d, ee, f}, q * q * a * a / (b * c * d * ee * f), ctx);
                SeriesProbe pr = probe_w(lam, {lam * b / a, lam * c / a, lam * d / a, ee, f},
                                         q * a / (ee * f), ctx);
                if (!(pl.kappa <= 1e3 && pr.kappa <= 1e3))
                    return "conditioning bound sum|t_k|/|sum| <= 1e3 in each series";
            } catch (const std::exception&) {
                return "conditioning estimate failed";
            }
            return std::nullopt;
        };
        e.draw = make_draw(e.params, e.admissible);
        e.eval = [](const ParamMap& pm, const QContext& ctx, const EvalOptions&) {
            Cx a = P(pm, "a"), b = P(pm, "b"), c = P(pm, "c"), d = P(pm, "d");
            Cx ee = P(pm, "e"), f = P(pm, "f"), q = ctx.q;
            Cx lam = q * a * a / (b * c * d);
            EvalOutput out;
            out.lhs = eval_w({a, {b, c, d, ee, f}, q * q * a * a / (b * c * d * ee * f)}, ctx);
            Cx pref = qpoch_multi({q * a, q * a / (ee * f), q * lam / ee, q * lam / f}, ctx) /
                      qpoch_multi({q * a / ee, q * a / f, q * lam, q * lam / (ee * f)}, ctx);
            out.rhs = pref * eval_w({lam, {lam * b / a, lam * c / a, lam * d / a, ee, f},
                                     q * a / (ee * f)},
                                    ctx);
            return out;
        };
        reg.push_back(std::move(e));
    }

    return reg;
}

} // namespace

const std::vector<IdentityEntry>& registry() {
    static const std::vector<IdentityEntry> reg = build_registry();
    return reg;
}

const IdentityEntry* find_entry(const std::string& id) {
    for (const auto& e : registry())
        if (e.id == id) return &e;
    return nullptr;
}

} // namespace qv::harness
