#include <cstdio>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "qv/formal/oracle.hpp"
#include "qv/harness/check.hpp"
#include "qv/harness/config.hpp"
#include "qv/harness/registry.hpp"
#include "qv/harness/report.hpp"
#include "qv/harness/sampler.hpp"

using qv::Cx;
using qv::QContext;
namespace harness = qv::harness;

namespace {

bool pass_formula(const harness::IdentityReport& r) {
    if (r.rel_residual <= r.tol) return true;
    return std::abs(r.rhs) < r.tol && r.abs_residual <= r.tol;
}

} // namespace

TEST_CASE("config entries and files") {
    harness::Config cfg;
    harness::apply_config_entry(cfg, "tol_tail", "1e-11");
    harness::apply_config_entry(cfg, "max_terms", "2048");
    harness::apply_config_entry(cfg, "max_nodes", "131072");
    CHECK(cfg.tol_tail == 1e-11);
    CHECK(cfg.max_terms == 2048);
    CHECK(cfg.max_nodes == 131072);
    CHECK_THROWS_AS(harness::apply_config_entry(cfg, "no_such_key", "1"), std::invalid_argument);
    CHECK_THROWS_AS(harness::apply_config_entry(cfg, "tol_tail", "abc"), std::invalid_argument);

    const char* path = "harness_config_test.tmp";
    {
        std::ofstream out(path);
        out << "# comment line\n\ntol_tail=1e-11\nmax_terms = 512\nmax_nodes=4096\n";
    }
    harness::Config from_file = harness::load_config_file(path);
    CHECK(from_file.tol_tail == 1e-11);
    CHECK(from_file.max_terms == 512);
    CHECK(from_file.max_nodes == 4096);
    std::remove(path);
    CHECK_THROWS_AS(harness::load_config_file("definitely_missing_file.cfg"),
                    std::invalid_argument);
}

TEST_CASE("parameter map lookups") {
    harness::ParamMap pm = {{"a", Cx(0.3, 0.0)}, {"b", Cx(-0.2, 0.1)}};
    REQUIRE(harness::find_param(pm, "b") != nullptr);
    CHECK(*harness::find_param(pm, "b") == Cx(-0.2, 0.1));
    CHECK(harness::find_param(pm, "zz") == nullptr);
    CHECK(harness::require_param(pm, "a") == Cx(0.3, 0.0));
    CHECK_THROWS_AS(harness::require_param(pm, "zz"), std::invalid_argument);
}

TEST_CASE("single-point check at a known good point") {
    QContext ctx(Cx(0.5, 0.0));
    harness::ParamMap pm = {{"a", Cx(0.3, 0.0)},
                            {"b", Cx(-0.2, 0.0)},
                            {"c", Cx(0.25, 0.0)},
                            {"d", Cx(0.1, 0.0)}};
    auto rep = harness::check_identity("AW", pm, ctx, 1e-9);
    CHECK(rep.pass);
    CHECK(rep.rel_residual < 1e-9);
    CHECK(rep.tol == 1e-9);
    CHECK(rep.id == "AW");
    CHECK(rep.q == ctx.q);
}

TEST_CASE("binomial-type identity is exact at a unit parameter") {
    QContext ctx(Cx(0.3, 0.0));
    harness::ParamMap pm = {{"a", Cx(1.0, 0.0)}, {"z", Cx(0.4, 0.0)}};
    auto rep = harness::check_identity("q-binom", pm, ctx);
    CHECK(rep.pass);
    CHECK(rep.lhs == Cx(1.0, 0.0));
    CHECK(rep.rhs == Cx(1.0, 0.0));
}

TEST_CASE("domain violations name the violated predicate") {
    QContext ctx(Cx(0.5, 0.0));
    harness::ParamMap pm = {{"a", Cx(1.2, 0.0)},
                            {"b", Cx(0.2, 0.0)},
                            {"c", Cx(0.25, 0.0)},
                            {"d", Cx(0.1, 0.0)}};
    CHECK_THROWS_WITH_AS(harness::check_identity("AW", pm, ctx), "modulus bound |a|<1 violated",
                         std::domain_error);

    harness::ParamMap missing = {{"a", Cx(0.2, 0.0)}};
    CHECK_THROWS_AS(harness::check_identity("AW", missing, ctx), std::invalid_argument);
    CHECK_THROWS_AS(harness::check_identity("no-such-id", pm, ctx), std::invalid_argument);
}

TEST_CASE("seeded sweeps pass at their default tolerances") {
    auto gauss = harness::scan("q-gauss", 100, 7);
    REQUIRE(gauss.size() == 100);
    for (const auto& r : gauss) {
        CHECK(r.pass);
        CHECK(pass_formula(r));
    }

    auto rearr = harness::scan("liu-rearrange", 25, 1);
    REQUIRE(rearr.size() == 25);
    for (const auto& r : rearr) {
        CHECK(r.pass);
        CHECK(pass_formula(r));
    }
}

TEST_CASE("sweep argument validation") {
    CHECK_THROWS_AS(harness::scan("AW", 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(harness::scan("no-such-id", 5, 1), std::invalid_argument);
}

TEST_CASE("sweeps are deterministic across repeats and thread counts") {
    harness::ScanOptions one_thread;
    one_thread.threads = 1;
    harness::ScanOptions many_threads;
    many_threads.threads = 4;

    for (const char* id : {"q-gauss", "AW"}) {
        std::size_t n = std::string(id) == "AW" ? 5 : 30;
        auto a = harness::scan(id, n, 99, one_thread);
        auto b = harness::scan(id, n, 99, one_thread);
        auto c = harness::scan(id, n, 99, many_threads);
        CHECK(harness::to_json(a) == harness::to_json(b));
        CHECK(harness::to_json(a) == harness::to_json(c));
    }
}

TEST_CASE("registry is closed, unique, and draws admissible points") {
    const auto& reg = harness::registry();
    CHECK(reg.size() == 21);

    std::set<std::string> ids;
    for (const auto& e : reg) ids.insert(e.id);
    CHECK(ids.size() == reg.size());

    CHECK(harness::find_entry("AW") != nullptr);
    CHECK(harness::find_entry("t-8w7") != nullptr);
    CHECK(harness::find_entry("nope") == nullptr);
    CHECK(harness::find_entry("AW")->kind == harness::IdentityEntry::Kind::integral);
    CHECK(harness::find_entry("q-gauss")->kind == harness::IdentityEntry::Kind::series);
    CHECK(harness::find_entry("t-vwp")->kind == harness::IdentityEntry::Kind::transformation);
    CHECK(harness::find_entry("liu-rearrange")->kind ==
          harness::IdentityEntry::Kind::rearrangement);

    QContext ctx(Cx(0.45, 0.0));
    for (const auto& e : reg) {
        harness::Sampler s(3);
        harness::ParamMap pm = e.draw(s, ctx);
        for (const auto& pr : e.params) {
            INFO(e.id << " parameter " << pr.name);
            CHECK(harness::find_param(pm, pr.name) != nullptr);
        }
        if (e.admissible) {
            auto bad = e.admissible(pm, ctx);
            INFO(e.id << " violated: " << (bad ? *bad : ""));
            CHECK(!bad.has_value());
        }
    }
}

TEST_CASE("sampler determinism and ranges") {
    harness::Sampler s1(1234), s2(1234), s3(77);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 200; ++i) {
        double a = s1.unit(), b = s2.unit(), c = s3.unit();
        all_equal = all_equal && (a == b);
        any_diff = any_diff || (a != c);
        CHECK(a >= 0.0);
        CHECK(a < 1.0);
    }
    CHECK(all_equal);
    CHECK(any_diff);

    harness::Sampler s(5);
    bool saw_imag = false, saw_neg = false;
    for (int i = 0; i < 100; ++i) {
        Cx z = s.draw(0.2, 0.7, true);
        CHECK(std::abs(z) >= 0.2);
        CHECK(std::abs(z) < 0.7);
        saw_imag = saw_imag || z.imag() != 0.0;

        Cx r = s.draw(0.2, 0.7, false);
        CHECK(r.imag() == 0.0);
        saw_neg = saw_neg || r.real() < 0.0;

        Cx q = s.draw_q(false);
        CHECK(q.imag() == 0.0);
        CHECK(q.real() >= 0.1);
        CHECK(q.real() < 0.8);
    }
    CHECK(saw_imag);
    CHECK(saw_neg);
}

TEST_CASE("pole lattice proximity predicate") {
    CHECK(harness::pole_clear(Cx(0.5, 0.0), Cx(0.5, 0.0)));
    CHECK(!harness::pole_clear(Cx(2.0, 0.0), Cx(0.5, 0.0))); // x q = 1 exactly
    CHECK(!harness::pole_clear(Cx(4.02, 0.0), Cx(0.5, 0.0), 0.05)); // x q^2 near 1
    CHECK(harness::pole_clear(Cx(4.0, 2.5), Cx(0.5, 0.0), 0.05)); // far off the lattice
}

TEST_CASE("reports serialize losslessly with stable field names") {
    QContext ctx(Cx(0.5, 0.0));
    harness::ParamMap pm = {{"a", Cx(0.3, 0.0)},
                            {"b", Cx(-0.2, 0.0)},
                            {"c", Cx(0.25, 0.0)},
                            {"d", Cx(0.1, 0.0)}};
    auto rep = harness::check_identity("AW", pm, ctx, 1e-9);
    auto parsed = nlohmann::json::parse(harness::to_json(rep));

    for (const char* key : {"id", "params", "q", "lhs", "rhs", "abs_residual", "rel_residual",
                            "tol", "pass", "lhs_err_estimate", "diagnostics"})
        CHECK(parsed.contains(key));
    CHECK(parsed["id"] == "AW");
    CHECK(parsed["pass"] == true);
    CHECK(parsed["q"]["re"].get<double>() == 0.5);
    CHECK(parsed["lhs"]["re"].get<double>() == rep.lhs.real());
    CHECK(parsed["rel_residual"].get<double>() == rep.rel_residual);
    CHECK(parsed["params"]["a"]["re"].get<double>() == 0.3);

    auto arr = nlohmann::json::parse(harness::to_json(harness::scan("q-binom", 3, 11)));
    REQUIRE(arr.is_array());
    CHECK(arr.size() == 3);
}

TEST_CASE("exact-oracle driver") {
    std::vector<qv::formal::GradedParam> g = {{qv::formal::rat(1), 1},
                                              {qv::formal::rat(1), 2},
                                              {qv::formal::rat(1), 3},
                                              {qv::formal::rat(1), 4}};
    auto rep = harness::oracle_check(qv::IdentityId::AW, g, 40);
    CHECK(rep.pass);
    CHECK(rep.first_mismatch == -1);
    CHECK(rep.order == 40);

    std::vector<qv::formal::GradedParam> one = {{qv::formal::rat(1), 3}};
    auto rep1p = harness::oracle_check(qv::IdentityId::AW1p, one, 30);
    CHECK(rep1p.pass);

    auto parsed = nlohmann::json::parse(harness::to_json(rep));
    CHECK(parsed["pass"] == true);
    CHECK(parsed["id"] == "AW");

    CHECK_THROWS_AS(harness::oracle_check(qv::IdentityId::Liu, g, 10), std::invalid_argument);
}
