// qverify: evaluate q-shifted factorials, basic hypergeometric series, and
// the Askey-Wilson integral family, and verify the identity registry.
//
//   qverify eval pochhammer --x 0.3 --q 0.5 --n 10        finite product
//   qverify eval pochhammer --x 0.3-0.1i --q 0.5 --inf    infinite product
//   qverify eval phi --upper 0.2,0.3 --lower 0.4 --q 0.5 --z 0.25
//   qverify eval integral --id AW --params a=0.1,b=0.2,c=0.3,d=0.4 --q 0.45
//   qverify verify [--seed S]
//   qverify scan --id ISV --samples 200 --seed 7 [--json out.json]
//   qverify oracle --id AW --gparams a=1*p^1,b=1*p^2 --order 40
//
// Exit codes: 0 all checks passed, 1 a check failed, 2 invalid usage.

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qv/awkernel.hpp"
#include "qv/formal/oracle.hpp"
#include "qv/harness/check.hpp"
#include "qv/harness/config.hpp"
#include "qv/harness/registry.hpp"
#include "qv/harness/report.hpp"
#include "qv/qhyper.hpp"
#include "qv/qpochhammer.hpp"

using qv::Cx;
using qv::QContext;
namespace harness = qv::harness;
namespace formal = qv::formal;

namespace {

double parse_double_strict(const std::string& s) {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("malformed number '" + s + "'");
    return v;
}

// Accepts "re", "rei.. " forms: "0.3", "-0.27", "0.3-0.1i", "0.4i", "-i".
Cx parse_complex(std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(),
                           [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (s.empty()) throw std::invalid_argument("empty complex literal");
    if (s.back() == 'i' || s.back() == 'I') {
        std::string body = s.substr(0, s.size() - 1);
        std::size_t split = std::string::npos;
        for (std::size_t i = body.size(); i-- > 1;) {
            char c = body[i];
            if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
                split = i;
                break;
            }
        }
        if (split == std::string::npos) {
            if (body.empty() || body == "+") return Cx(0.0, 1.0);
            if (body == "-") return Cx(0.0, -1.0);
            return Cx(0.0, parse_double_strict(body));
        }
        std::string re = body.substr(0, split);
        std::string im = body.substr(split);
        double imv = (im == "+") ? 1.0 : (im == "-") ? -1.0 : parse_double_strict(im);
        return Cx(parse_double_strict(re), imv);
    }
    return Cx(parse_double_strict(s), 0.0);
}

std::vector<std::string> split_list(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t end = s.find(sep, start);
        if (end == std::string::npos) {
            out.push_back(s.substr(start));
            break;
        }
        out.push_back(s.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

std::vector<Cx> parse_complex_list(const std::string& s) {
    std::vector<Cx> out;
    if (s.empty()) return out;
    for (const auto& item : split_list(s, ',')) out.push_back(parse_complex(item));
    return out;
}

harness::ParamMap parse_params(const std::string& s) {
    harness::ParamMap pm;
    if (s.empty()) return pm;
    for (const auto& item : split_list(s, ',')) {
        std::size_t eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("parameter assignment '" + item + "' is not name=value");
        pm.emplace_back(item.substr(0, eq), parse_complex(item.substr(eq + 1)));
    }
    return pm;
}

// Graded assignments name the oracle's positional slots a,b,c,d,f,g; each
// value has the shape r*p^m with r a rational (or decimal-free integer).
std::vector<formal::GradedParam> parse_gparams(const std::string& s) {
    const std::vector<std::string> slots = {"a", "b", "c", "d", "f", "g"};
    std::vector<formal::GradedParam> out(slots.size());
    std::size_t max_used = 0;
    bool any = false;
    for (const auto& item : split_list(s, ',')) {
        std::size_t eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("graded assignment '" + item + "' is not name=r*p^m");
        std::string key = item.substr(0, eq);
        std::string val = item.substr(eq + 1);
        auto slot = std::find(slots.begin(), slots.end(), key);
        if (slot == slots.end())
            throw std::invalid_argument("unknown graded slot '" + key + "' (use a,b,c,d,f,g)");
        std::size_t idx = static_cast<std::size_t>(slot - slots.begin());
        std::size_t pp = val.find("*p^");
        if (pp == std::string::npos)
            throw std::invalid_argument("graded value '" + val + "' is not r*p^m");
        formal::GradedParam g;
        g.r = formal::rat_from_string(val.substr(0, pp));
        std::size_t used = 0;
        unsigned long m = std::stoul(val.substr(pp + 3), &used);
        if (used != val.size() - pp - 3)
            throw std::invalid_argument("graded value '" + val + "' has a malformed exponent");
        g.m = static_cast<unsigned>(m);
        out[idx] = g;
        max_used = std::max(max_used, idx + 1);
        any = true;
    }
    if (!any) throw std::invalid_argument("empty graded parameter list");
    out.resize(max_used);
    return out;
}

std::string fmt_cx(Cx z) {
    char buf[96];
    if (z.imag() == 0.0) {
        std::snprintf(buf, sizeof buf, "%.17g", z.real());
    } else {
        std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
    }
    return buf;
}

struct CommonOpts {
    std::string config_path;
    std::optional<double> tol_tail;
    std::optional<std::size_t> max_terms;
    std::optional<std::size_t> max_nodes;

    harness::Config resolve() const {
        harness::Config cfg;
        if (!config_path.empty()) cfg = harness::load_config_file(config_path);
        if (tol_tail) cfg.tol_tail = *tol_tail;       // flags win over the file
        if (max_terms) cfg.max_terms = *max_terms;
        if (max_nodes) cfg.max_nodes = *max_nodes;
        return cfg;
    }
};

void add_common(CLI::App* sub, CommonOpts& c) {
    sub->add_option("--config", c.config_path, "key=value config file");
    sub->add_option("--tol-tail", c.tol_tail, "series tail tolerance");
    sub->add_option("--max-terms", c.max_terms, "series term budget");
    sub->add_option("--max-nodes", c.max_nodes, "quadrature node budget");
}

int run_verify(std::uint64_t seed, const harness::Config& cfg) {
    bool all_pass = true;
    for (const auto& entry : harness::registry()) {
        harness::ScanOptions so;
        so.cfg = cfg;
        auto reports = harness::scan(entry.id, entry.default_samples, seed, so);
        std::size_t npass = 0;
        double worst = 0.0;
        for (const auto& r : reports) {
            if (r.pass) ++npass;
            worst = std::max(worst, r.rel_residual);
        }
        bool ok = npass == reports.size();
        all_pass = all_pass && ok;
        std::printf("%-14s %s  %zu/%zu within %.1e  (worst rel %.3e)\n", entry.id.c_str(),
                    ok ? "pass" : "FAIL", npass, reports.size(), entry.default_tol, worst);
        if (!ok) {
            for (const auto& r : reports)
                if (!r.pass) {
                    std::printf("    failing point: %s\n", harness::to_json(r).c_str());
                    break;
                }
        }
    }
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification engine for the Askey-Wilson integral family"};
    app.require_subcommand(1);

    // ---- eval ----
    CLI::App* eval = app.add_subcommand("eval", "evaluate one quantity");
    eval->require_subcommand(1);

    std::string ev_x, ev_q, ev_z, ev_upper, ev_lower;
    long ev_n = -1;
    bool ev_inf = false;
    long ev_terminating = -1;
    CommonOpts poch_common, phi_common, integ_common;

    CLI::App* poch = eval->add_subcommand("pochhammer", "q-shifted factorial");
    poch->add_option("--x", ev_x, "argument")->required();
    poch->add_option("--q", ev_q, "nome")->required();
    poch->add_option("--n", ev_n, "finite order");
    poch->add_flag("--inf", ev_inf, "infinite product");
    add_common(poch, poch_common);

    CLI::App* phi = eval->add_subcommand("phi", "basic hypergeometric series");
    phi->add_option("--upper", ev_upper, "comma-separated upper parameters");
    phi->add_option("--lower", ev_lower, "comma-separated lower parameters");
    phi->add_option("--q", ev_q, "nome")->required();
    phi->add_option("--z", ev_z, "argument")->required();
    phi->add_option("--terminating", ev_terminating, "terminate at this order");
    add_common(phi, phi_common);

    std::string in_id, in_params, in_q;
    double in_tol = 0.0;
    CLI::App* integ = eval->add_subcommand("integral", "one identity at one point");
    integ->add_option("--id", in_id, "identity id")->required();
    integ->add_option("--params", in_params, "name=value,... assignments")->required();
    integ->add_option("--q", in_q, "nome")->required();
    integ->add_option("--tol", in_tol, "residual tolerance (default: per identity)");
    add_common(integ, integ_common);

    // ---- verify ----
    std::uint64_t verify_seed = 12345;
    std::string vf_id, vf_params, vf_q;
    double vf_tol = 0.0;
    CommonOpts verify_common;
    CLI::App* verify =
        app.add_subcommand("verify", "check one point (--id/--params/--q) or the whole registry");
    auto* vf_id_opt = verify->add_option("--id", vf_id, "identity id (single-point mode)");
    auto* vf_params_opt =
        verify->add_option("--params", vf_params, "name=value,... assignments")->needs(vf_id_opt);
    auto* vf_q_opt = verify->add_option("--q", vf_q, "nome")->needs(vf_id_opt);
    verify->add_option("--tol", vf_tol, "residual tolerance (default: per identity)");
    verify->add_option("--seed", verify_seed, "sampler seed (registry sweep mode)");
    vf_id_opt->needs(vf_params_opt)->needs(vf_q_opt);
    add_common(verify, verify_common);

    // ---- scan ----
    std::string scan_id, scan_json;
    std::size_t scan_samples = 0;
    std::uint64_t scan_seed = 0;
    double scan_tol = 0.0;
    bool scan_complex_q = false;
    CommonOpts scan_common;
    CLI::App* scan_cmd = app.add_subcommand("scan", "seeded random sweep of one identity");
    scan_cmd->add_option("--id", scan_id, "identity id")->required();
    scan_cmd->add_option("--samples", scan_samples, "number of points")->required();
    scan_cmd->add_option("--seed", scan_seed, "sampler seed")->required();
    scan_cmd->add_option("--tol", scan_tol, "residual tolerance (default: per identity)");
    scan_cmd->add_option("--json", scan_json, "write the report array to this file");
    scan_cmd->add_flag("--complex-q", scan_complex_q, "draw q off the real axis");
    add_common(scan_cmd, scan_common);

    // ---- oracle ----
    std::string or_id, or_gparams;
    std::size_t or_order = 0;
    CLI::App* oracle = app.add_subcommand("oracle", "exact coefficientwise check");
    oracle->add_option("--id", or_id, "identity id")->required();
    oracle->add_option("--gparams", or_gparams, "a=r*p^m,... graded assignments")->required();
    oracle->add_option("--order", or_order, "tracked exponent count")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (poch->parsed()) {
            harness::Config cfg = poch_common.resolve();
            Cx x = parse_complex(ev_x), q = parse_complex(ev_q);
            if (ev_inf == (ev_n >= 0))
                throw std::invalid_argument("pochhammer: give exactly one of --n or --inf");
            Cx v;
            if (ev_inf) {
                QContext ctx(q, cfg.tol_tail, cfg.max_terms);
                v = qv::qpoch_inf(x, ctx);
            } else {
                v = qv::qpoch_finite(x, q, static_cast<std::size_t>(ev_n));
            }
            std::printf("%s\n", fmt_cx(v).c_str());
            return 0;
        }
        if (phi->parsed()) {
            harness::Config cfg = phi_common.resolve();
            QContext ctx(parse_complex(ev_q), cfg.tol_tail, cfg.max_terms);
            qv::PhiSpec spec;
            spec.upper = parse_complex_list(ev_upper);
            spec.lower = parse_complex_list(ev_lower);
            spec.z = parse_complex(ev_z);
            if (ev_terminating >= 0)
                spec.terminating_at = static_cast<std::size_t>(ev_terminating);
            std::printf("%s\n", fmt_cx(qv::eval_phi(spec, ctx)).c_str());
            return 0;
        }
        if (integ->parsed()) {
            harness::Config cfg = integ_common.resolve();
            QContext ctx(parse_complex(in_q), cfg.tol_tail, cfg.max_terms);
            harness::EvalOptions eo;
            eo.max_nodes = cfg.max_nodes;
            harness::IdentityReport rep =
                harness::check_identity(in_id, parse_params(in_params), ctx, in_tol, eo);
            std::printf("%s\n", harness::to_json(rep).c_str());
            return rep.pass ? 0 : 1;
        }
        if (verify->parsed()) {
            if (!vf_id.empty()) {
                harness::Config cfg = verify_common.resolve();
                QContext ctx(parse_complex(vf_q), cfg.tol_tail, cfg.max_terms);
                harness::EvalOptions eo;
                eo.max_nodes = cfg.max_nodes;
                harness::IdentityReport rep =
                    harness::check_identity(vf_id, parse_params(vf_params), ctx, vf_tol, eo);
                std::printf("%s\n", harness::to_json(rep).c_str());
                return rep.pass ? 0 : 1;
            }
            return run_verify(verify_seed, verify_common.resolve());
        }
        if (scan_cmd->parsed()) {
            harness::ScanOptions so;
            so.cfg = scan_common.resolve();
            so.tol = scan_tol;
            so.complex_q = scan_complex_q;
            auto reports = harness::scan(scan_id, scan_samples, scan_seed, so);
            std::string json = harness::to_json(reports);
            std::size_t npass = 0;
            for (const auto& r : reports)
                if (r.pass) ++npass;
            if (!scan_json.empty()) {
                std::ofstream out(scan_json);
                if (!out) throw std::invalid_argument("cannot write '" + scan_json + "'");
                out << json << "\n";
                std::printf("%s: %zu/%zu pass -> %s\n", scan_id.c_str(), npass, reports.size(),
                            scan_json.c_str());
            } else {
                std::printf("%s\n", json.c_str());
            }
            return npass == reports.size() ? 0 : 1;
        }
        if (oracle->parsed()) {
            auto iid = qv::identity_from_string(or_id);
            if (!iid) throw std::invalid_argument("unknown identity id '" + or_id + "'");
            auto rep = harness::oracle_check(*iid, parse_gparams(or_gparams), or_order);
            std::printf("%s\n", harness::to_json(rep).c_str());
            return rep.pass ? 0 : 1;
        }
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
