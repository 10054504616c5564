#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "enskog/config.hpp"

namespace enskog {

/// Extra checks a scenario asks for on top of the generic run verdicts.
struct Expectations {
    bool relaxation = false;   ///< final |T_mean - T_w|/T_w <= 1%
    bool equilibrium = false;  ///< moments and F stay at their initial values
};

struct Scenario {
    std::string name;
    std::string description;
    SimulationConfig config;
    Expectations expect;
};

const std::vector<std::string>& scenario_names();
/// Throws std::invalid_argument for unknown names.
Scenario make_scenario(const std::string& name);

struct Verdict {
    std::string name;
    bool pass = true;
    bool counted = true;  ///< informational verdicts do not affect the exit code
    double measured = 0.0;
    double tolerance = 0.0;
    std::string note;
    nlohmann::json to_json() const;
};

struct RunOutcome {
    int exit_code = 0;  ///< 0 pass, 1 verdict failure, 3 numerical abort
    std::vector<Verdict> verdicts;
    std::optional<RunResult> result;  ///< empty after an abort
    nlohmann::json manifest;
};

struct RunOptions {
    std::string scenario;    ///< recorded in the manifest, may be empty
    Expectations expect;
    int threads = 1;
    bool write_outputs = true;
    bool progress = true;    ///< progress lines on stderr
};

/// Runs a validated configuration, evaluates the verdicts and writes the
/// declared outputs into config.output.directory.
RunOutcome run_simulation(const SimulationConfig& config, const RunOptions& options);

/// Verdicts computed from a finished run.
std::vector<Verdict> evaluate_verdicts(const SimulationConfig& config, const Solver& solver, const RunResult& result,
                                       const Expectations& expect);

/// Lower bound of F' valid for every state of the given mass: Gibbs'
/// inequality for the kinetic part, the ideal part of H^(c), and the most
/// negative cell-pair integral for the mean-field energy.
double free_energy_lower_bound(const SimulationConfig& config, const Solver& solver, double mass);

}  // namespace enskog
