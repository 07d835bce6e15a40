#pragma once

// JSON scenario documents and result serialization.
//
// Scenario layout:
//   {
//     "outcomes": [z_1, ..., z_n],
//     "credal":   {"generators": [[p_1..p_n], ...]}
//              or {"bounds": {"lower": [...], "upper": [...]}},
//     "loss":     {"kind": "squared|absolute|pinball|entropic", "tau": t, "gamma": g},
//     "domain":   {"lo": a, "hi": b},
//     "solver":   {"theta_tol": ..., "value_tol": ..., "flat_tol": ..., "max_iters": ...}   (optional)
//   }

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "credal/bayes.hpp"
#include "credal/core_model.hpp"
#include "credal/losses.hpp"
#include "credal/minimax.hpp"
#include "credal/property_lab.hpp"

namespace credal {

using Json = nlohmann::ordered_json;

struct BoundsSpec {
  std::vector<double> lower;
  std::vector<double> upper;
};

struct Scenario {
  std::vector<double> outcomes;
  std::vector<std::vector<double>> generators;  ///< set when the credal set is given by generators
  std::optional<BoundsSpec> bounds;             ///< set when it is given by interval bounds
  LossSpec loss = LossSpec::squared();
  PropertyDomain domain{0.0, 1.0};
  std::optional<SolverParams> solver;

  SolverParams solver_params() const { return solver.value_or(SolverParams{}); }
  OutcomeSpace space() const { return OutcomeSpace(outcomes); }
  /// Generators as given, or the vertices of the bounds polytope.
  CredalSet credal_set() const;
};

/// Validates every field by building the library types. Throws ScenarioError
/// whose message starts with the offending field path, e.g.
/// "credal.generators[1]: weights sum to 0.8, expected 1".
Scenario parse_scenario(const Json& doc);
/// Reads and parses a scenario file; syntax errors report line and column.
Scenario load_scenario(const std::filesystem::path& path);
Json to_json(const Scenario& s);
/// Scenario for an explicit instance (used for replayable failure records).
Scenario make_scenario(const CredalSet& set, const LossSpec& loss, const PropertyDomain& domain);

TrialConfig parse_trial_config(const Json& doc);
TrialConfig load_trial_config(const std::filesystem::path& path);
Json to_json(const TrialConfig& cfg);

Json to_json(const LossSpec& loss);
Json to_json(const SolverParams& p);
Json to_json(const PropertyValueSet& s);
Json to_json(const MinimaxResult& r);
Json to_json(const BayesPairResult& r);
Json to_json(const WorstCaseResult& r);
Json to_json(const InclusionReport& r);
Json to_json(const CheckReport& r);

/// Reads a whole file; throws ScenarioError when it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace credal
