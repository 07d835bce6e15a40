#pragma once

// Randomized verification harness for the structural properties of
// Gamma-maximin elicited values: hull invariance, convexity of level sets,
// closure of level sets under unions, uniqueness under strict convexity,
// minimax duality and the worst-case inclusion.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "credal/core_model.hpp"
#include "credal/losses.hpp"
#include "credal/minimax.hpp"

namespace credal {

struct TrialConfig {
  std::uint64_t seed = 42;
  int n_outcomes = 8;    ///< instances draw n uniformly from [2, n_outcomes]; at most 8
  int n_generators = 6;  ///< instances draw m uniformly from [1, n_generators]; at most 6
  std::vector<LossKind> losses = {LossKind::squared, LossKind::absolute, LossKind::pinball, LossKind::entropic};
  int trials = 200;
  SolverParams tolerances;
  double violation_tol = 1e-6;

  /// Throws DomainError.
  void validate() const;
};

struct CheckFailure {
  int trial = 0;
  double violation = 0.0;
  std::string instance;  ///< scenario JSON reproducing the trial's base instance
  std::string detail;
};

struct CheckReport {
  std::string check_name;
  int trials_run = 0;
  double tolerance = 0.0;
  double max_violation = 0.0;
  std::vector<CheckFailure> failures;
  std::vector<std::string> notes;

  bool passed() const noexcept { return failures.empty(); }
};

/// One randomly drawn problem.
struct Instance {
  CredalSet set;
  LossSpec loss;
  PropertyDomain domain;
};

/// Random instance: outcomes sorted uniform on [-3, 3], generators uniform on
/// the simplex, domain [-4, 4]. Pinball tau ~ U(0.1, 0.9), entropic gamma ~
/// U(0.25, 2).
Instance random_instance(std::mt19937_64& rng, const TrialConfig& cfg, LossKind kind);

/// Distribution uniform on the simplex of `space`.
Distribution random_distribution(std::mt19937_64& rng, const OutcomeSpace& space);

/// A credal set whose elicited value set contains `theta`, built from
/// distributions whose own precise property contains `theta` plus random
/// distributions whose risk at `theta` stays below that of the anchors.
CredalSet manufacture_level_set_member(std::mt19937_64& rng, const OutcomeSpace& space, const LossSpec& spec,
                                       double theta);

CheckReport check_hull_invariance(const TrialConfig& cfg, Execution execution = Execution::parallel);
CheckReport check_levelset_convexity(const TrialConfig& cfg, Execution execution = Execution::parallel);
/// Pairs on even trials, triples on odd ones.
CheckReport check_union_closure(const TrialConfig& cfg, Execution execution = Execution::parallel);
CheckReport check_uniqueness(const TrialConfig& cfg, Execution execution = Execution::parallel);
CheckReport check_duality(const TrialConfig& cfg, Execution execution = Execution::parallel);
CheckReport check_worst_case_inclusion(const TrialConfig& cfg, Execution execution = Execution::parallel);

/// Squared loss on {0, 1, 2}: f({(1,0,0),(0.5,0,0.5)}) = 1,
/// f({(1,0,0),(0.25,0.5,0.25)}) = 1, f({(1,0,0)}) = 0, each within theta_tol.
CheckReport reproduce_intersection_counterexample(const SolverParams& params = {});

/// Every check above, in a fixed order. Deterministic given the config.
std::vector<CheckReport> run_suite(const TrialConfig& cfg, Execution execution = Execution::parallel);

}  // namespace credal
