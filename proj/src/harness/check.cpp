#include "qv/harness/check.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "qv/errors.hpp"
#include "qv/quadrature.hpp"

namespace qv::harness {

namespace {

double quad_tol_for(double tol) { return std::max(tol * 1e-2, 1e-13); }

// Truncation tails must sit far enough under the certified tolerance that
// cancellation between large intermediate sums cannot eat the margin; the
// floor keeps the budget above double rounding.
QContext derived_context(const QContext& ctx, double tol) {
    double tail = std::min(ctx.tol_tail, std::max(tol * 1e-4, 1e-14));
    return QContext(ctx.q, tail, ctx.max_terms);
}

IdentityReport evaluate_point(const IdentityEntry& entry, const ParamMap& params,
                              const QContext& ctx, double tol, const EvalOptions& opt) {
    IdentityReport rep;
    rep.id = entry.id;
    rep.params = params;
    rep.q = ctx.q;
    rep.tol = tol;
    try {
        EvalOutput out = entry.eval(params, ctx, opt);
        rep.lhs = out.lhs;
        rep.rhs = out.rhs;
        rep.lhs_err_estimate = out.lhs_err_estimate;
        rep.diagnostics = std::move(out.diagnostics);
        rep.abs_residual = std::abs(rep.lhs - rep.rhs);
        double scale = std::max({std::abs(rep.lhs), std::abs(rep.rhs), 1e-300});
        rep.rel_residual = rep.abs_residual / scale;
        bool finite = is_finite(rep.lhs) && is_finite(rep.rhs);
        bool near_zero_rhs = std::abs(rep.rhs) < tol;
        rep.pass = finite && (rep.rel_residual <= tol ||
                              (near_zero_rhs && rep.abs_residual <= tol));
        if (!finite) rep.diagnostics.push_back("non-finite side value");
    } catch (const quadrature_no_convergence& ex) {
        rep.lhs = ex.best.value;
        rep.rhs = Cx(std::numeric_limits<double>::quiet_NaN(), 0.0);
        rep.lhs_err_estimate = ex.best.err_estimate;
        rep.abs_residual = std::numeric_limits<double>::infinity();
        rep.rel_residual = std::numeric_limits<double>::infinity();
        rep.pass = false;
        rep.diagnostics.push_back(std::string("evaluation error: ") + ex.what());
    } catch (const std::exception& ex) {
        rep.lhs = Cx(std::numeric_limits<double>::quiet_NaN(), 0.0);
        rep.rhs = Cx(std::numeric_limits<double>::quiet_NaN(), 0.0);
        rep.abs_residual = std::numeric_limits<double>::infinity();
        rep.rel_residual = std::numeric_limits<double>::infinity();
        rep.pass = false;
        rep.diagnostics.push_back(std::string("evaluation error: ") + ex.what());
    }
    return rep;
}

} // namespace

IdentityReport check_identity(const std::string& id, const ParamMap& params,
                              const QContext& ctx, double tol, const EvalOptions& opt) {
    const IdentityEntry* entry = find_entry(id);
    if (!entry) throw std::invalid_argument("unknown identity id '" + id + "'");
    for (const auto& pr : entry->params) {
        const Cx* v = find_param(params, pr.name);
        if (!v) throw std::invalid_argument("missing parameter '" + pr.name + "'");
        if (!is_finite(*v))
            throw std::domain_error("parameter " + pr.name + " must be finite");
        if (pr.unit_bound && std::abs(*v) >= 1.0)
            throw std::domain_error("modulus bound |" + pr.name + "|<1 violated");
    }
    if (entry->admissible) {
        if (auto bad = entry->admissible(params, ctx))
            throw std::domain_error("inadmissible parameters: " + *bad);
    }
    double use_tol = tol > 0.0 ? tol : entry->default_tol;
    EvalOptions use_opt = opt;
    if (use_opt.quad_tol <= 0.0) use_opt.quad_tol = quad_tol_for(use_tol);
    return evaluate_point(*entry, params, derived_context(ctx, use_tol), use_tol, use_opt);
}

std::vector<IdentityReport> scan(const std::string& id, std::size_t n_samples,
                                 std::uint64_t seed, const ScanOptions& opt) {
    const IdentityEntry* entry = find_entry(id);
    if (!entry) throw std::invalid_argument("unknown identity id '" + id + "'");
    if (n_samples == 0) throw std::invalid_argument("scan: sample count must be positive");

    double tol = opt.tol > 0.0 ? opt.tol : entry->default_tol;
    EvalOptions eo;
    eo.quad_tol = quad_tol_for(tol);
    eo.max_nodes = opt.cfg.max_nodes;

    // All randomness is consumed up front on one thread; evaluation order
    // then has no effect on the report list.
    Sampler sampler(seed);
    std::vector<Cx> qs;
    std::vector<ParamMap> points;
    qs.reserve(n_samples);
    points.reserve(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        Cx q = sampler.draw_q(opt.complex_q);
        QContext ctx(q, opt.cfg.tol_tail, opt.cfg.max_terms);
        qs.push_back(q);
        points.push_back(entry->draw(sampler, ctx));
    }

    std::vector<IdentityReport> reports(n_samples);
    unsigned hw = std::thread::hardware_concurrency();
    unsigned nthreads = opt.threads ? opt.threads : (hw ? hw : 1);
    nthreads = static_cast<unsigned>(
        std::min<std::size_t>(nthreads, n_samples));

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n_samples) return;
            QContext ctx(qs[i], opt.cfg.tol_tail, opt.cfg.max_terms);
            try {
                reports[i] = evaluate_point(*entry, points[i], derived_context(ctx, tol), tol, eo);
            } catch (const std::exception& ex) {
                IdentityReport rep;
                rep.id = entry->id;
                rep.params = points[i];
                rep.q = qs[i];
                rep.tol = tol;
                rep.pass = false;
                rep.abs_residual = std::numeric_limits<double>::infinity();
                rep.rel_residual = std::numeric_limits<double>::infinity();
                rep.diagnostics.push_back(std::string("evaluation error: ") + ex.what());
                reports[i] = std::move(rep);
            }
        }
    };

    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return reports;
}

OracleReport oracle_check(IdentityId id, const std::vector<formal::GradedParam>& gparams,
                          std::size_t order) {
    OracleReport rep;
    rep.id = std::string(to_string(id));
    rep.order = order;
    formal::PSeries lhs = formal::constant_term_integral(id, gparams, order);
    formal::PSeries rhs = formal::rhs_pseries(id, gparams, order);
    rep.pass = true;
    for (std::size_t e = 0; e < order; ++e) {
        if (lhs.coeff(e) != rhs.coeff(e)) {
            rep.pass = false;
            rep.first_mismatch = static_cast<long>(e);
            rep.lhs_coeff = lhs.coeff_string(e);
            rep.rhs_coeff = rhs.coeff_string(e);
            break;
        }
    }
    return rep;
}

std::string to_json(const OracleReport& rep) {
    std::string out = "{\"id\": \"" + rep.id + "\", \"order\": " + std::to_string(rep.order) +
                      ", \"pass\": " + (rep.pass ? "true" : "false") +
                      ", \"first_mismatch\": " + std::to_string(rep.first_mismatch);
    out += ", \"lhs_coeff\": \"" + rep.lhs_coeff + "\", \"rhs_coeff\": \"" + rep.rhs_coeff +
           "\"}";
    return out;
}

} // namespace qv::harness
