#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qv/harness/report.hpp"
#include "qv/harness/sampler.hpp"
#include "qv/qcontext.hpp"

namespace qv::harness {

struct EvalOptions {
    // Quadrature tolerance; 0 means "derive from the identity tolerance",
    // which check_identity and scan resolve to tol * 1e-2 (floored at 1e-13)
    // before any evaluator runs.
    double quad_tol = 0.0;
    std::size_t max_nodes = 65536;
};

struct EvalOutput {
    Cx lhs{};
    Cx rhs{};
    double lhs_err_estimate = 0.0;
    std::vector<std::string> diagnostics;
};

struct ParamRange {
    std::string name;
    double min_mod;
    double max_mod;
    bool complex_phase = true;
    // Parameters living on the open unit disc carry the hard |.| < 1 bound;
    // selector-style parameters (lemma variant index) do not.
    bool unit_bound = true;
};

struct IdentityEntry {
    enum class Kind { integral, series, transformation, rearrangement };

    std::string id;
    Kind kind;
    std::vector<ParamRange> params;
    double default_tol;
    std::size_t default_samples;

    // Draws an admissible parameter point (rejection sampling inside).
    std::function<ParamMap(Sampler&, const QContext&)> draw;

    // Returns the name of the violated predicate, or nullopt when the
    // point is admissible.
    std::function<std::optional<std::string>(const ParamMap&, const QContext&)> admissible;

    std::function<EvalOutput(const ParamMap&, const QContext&, const EvalOptions&)> eval;
};

const std::vector<IdentityEntry>& registry();
const IdentityEntry* find_entry(const std::string& id); // nullptr when unknown

} // namespace qv::harness
