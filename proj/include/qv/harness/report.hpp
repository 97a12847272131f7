#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qv/qcontext.hpp"

namespace qv::harness {

// Ordered parameter assignment; order is preserved through reports and JSON.
using ParamMap = std::vector<std::pair<std::string, Cx>>;

const Cx* find_param(const ParamMap& pm, const std::string& name);
Cx require_param(const ParamMap& pm, const std::string& name); // invalid_argument if absent

// One identity check at one parameter point.
struct IdentityReport {
    std::string id;
    ParamMap params;
    Cx q{};
    Cx lhs{};
    Cx rhs{};
    double abs_residual = 0.0;
    double rel_residual = 0.0;
    double tol = 0.0;
    bool pass = false;
    double lhs_err_estimate = 0.0;
    std::vector<std::string> diagnostics;
};

// JSON with 17-significant-digit numbers; complex values serialize as
// {"re": ..., "im": ...}.  A vector serializes as a JSON array.
std::string to_json(const IdentityReport& rep);
std::string to_json(const std::vector<IdentityReport>& reps);

} // namespace qv::harness
