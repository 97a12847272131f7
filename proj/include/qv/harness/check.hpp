#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qv/awkernel.hpp"
#include "qv/formal/oracle.hpp"
#include "qv/harness/config.hpp"
#include "qv/harness/registry.hpp"

namespace qv::harness {

// Validates the point against the entry's declared domain (throws
// domain_error naming the violated bound or predicate, invalid_argument for
// unknown ids or missing parameters), evaluates both sides, and scores the
// residual.  Numeric failures during evaluation are recorded in the report's
// diagnostics with pass = false, not thrown.
IdentityReport check_identity(const std::string& id, const ParamMap& params,
                              const QContext& ctx, double tol = 0.0,
                              const EvalOptions& opt = {});

struct ScanOptions {
    Config cfg;
    double tol = 0.0;      // 0 -> entry default
    bool complex_q = false;
    unsigned threads = 0;  // 0 -> hardware concurrency
};

// n_samples seeded points: q and the parameter tuple are drawn sequentially
// from one generator, then evaluated (possibly in parallel) into a report
// list whose order matches the draw order, so a (id, seed, n, config) tuple
// always produces the same bytes.
std::vector<IdentityReport> scan(const std::string& id, std::size_t n_samples,
                                 std::uint64_t seed, const ScanOptions& opt = {});

struct OracleReport {
    std::string id;
    std::size_t order = 0;
    bool pass = false;
    long first_mismatch = -1;       // exponent of the first differing coefficient
    std::string lhs_coeff, rhs_coeff; // exact values at that exponent
};

// Compares the constant-term expansion against the closed form coefficient
// by coefficient in exact arithmetic through the given order.
OracleReport oracle_check(IdentityId id, const std::vector<formal::GradedParam>& gparams,
                          std::size_t order);

std::string to_json(const OracleReport& rep);

} // namespace qv::harness
