#include "credal/property_lab.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "credal/bayes.hpp"
#include "credal/errors.hpp"
#include "credal/scenario.hpp"
#include "credal/upper_risk.hpp"

namespace credal {

void TrialConfig::validate() const {
  if (trials < 1) throw DomainError("trials must be >= 1");
  if (n_outcomes < 2 || n_outcomes > 8) throw DomainError("n_outcomes must lie in [2, 8]");
  if (n_generators < 1 || n_generators > 6) throw DomainError("n_generators must lie in [1, 6]");
  if (losses.empty()) throw DomainError("losses must name at least one loss kind");
  if (!(violation_tol > 0.0)) throw DomainError("violation_tol must be positive");
  tolerances.validate();
}

namespace {

constexpr double kOutcomeRange = 3.0;
constexpr double kDomainHalfWidth = 4.0;

// check ids feed the per-trial seed; never renumber
enum CheckId : std::uint32_t { kHull = 1, kLevelSet, kUnion, kUniqueness, kDuality, kInclusion };

std::mt19937_64 trial_rng(std::uint64_t seed, CheckId check, int trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(check), static_cast<std::uint32_t>(trial)};
  return std::mt19937_64(seq);
}

std::string describe(const CredalSet& set, const LossSpec& loss, const PropertyDomain& domain) {
  return to_json(make_scenario(set, loss, domain)).dump();
}

std::string describe(const Instance& inst) { return describe(inst.set, inst.loss, inst.domain); }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::string fmt(const PropertyValueSet& s) {
  std::string out = "{";
  for (const auto& iv : s.intervals()) {
    if (out.size() > 1) out += ", ";
    out += "[" + fmt(iv.lo) + ", " + fmt(iv.hi) + "]";
  }
  return out + "}";
}

struct TrialOutcome {
  double violation = 0.0;
  bool asserted = true;  // false: measured and reported, never a failure
  bool skipped = false;
  std::string instance;
  std::string detail;
};

// Fills `o`; the instance is recorded first so that a throwing solver still
// leaves a replayable record.
using TrialFn = std::function<void(int trial, std::mt19937_64& rng, TrialOutcome& o)>;

CheckReport run_trials(const std::string& name, CheckId id, const TrialConfig& cfg, double tolerance,
                       Execution execution, const TrialFn& fn) {
  cfg.validate();
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(cfg.trials));
  auto one = [&](int t) {
    auto rng = trial_rng(cfg.seed, id, t);
    try {
      fn(t, rng, outcomes[t]);
    } catch (const std::exception& e) {
      outcomes[t].violation = std::numeric_limits<double>::infinity();
      outcomes[t].detail = std::string("error: ") + e.what();
    }
  };
  if (execution == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < cfg.trials; ++t) one(t);
  } else {
    for (int t = 0; t < cfg.trials; ++t) one(t);
  }

  CheckReport report;
  report.check_name = name;
  report.tolerance = tolerance;
  double recorded = 0.0;
  int unasserted = 0;
  int skipped = 0;
  for (int t = 0; t < cfg.trials; ++t) {
    const auto& o = outcomes[t];
    if (o.skipped) {
      ++skipped;
      continue;
    }
    ++report.trials_run;
    if (!o.asserted) {
      recorded = std::max(recorded, o.violation);
      ++unasserted;
      continue;
    }
    report.max_violation = std::max(report.max_violation, o.violation);
    if (!(o.violation <= tolerance)) report.failures.push_back({t, o.violation, o.instance, o.detail});
  }
  if (unasserted > 0)
    report.notes.push_back(std::to_string(unasserted) + " trial(s) measured but unasserted, largest value " +
                           fmt(recorded));
  if (skipped > 0) report.notes.push_back(std::to_string(skipped) + " trial(s) skipped (solver did not converge)");
  return report;
}

LossSpec random_loss(std::mt19937_64& rng, LossKind kind) {
  switch (kind) {
    case LossKind::squared: return LossSpec::squared();
    case LossKind::absolute: return LossSpec::absolute();
    case LossKind::pinball: return LossSpec::pinball(std::uniform_real_distribution<double>(0.1, 0.9)(rng));
    case LossKind::entropic: return LossSpec::entropic(std::uniform_real_distribution<double>(0.25, 2.0)(rng));
  }
  return LossSpec::squared();
}

LossKind kind_for_trial(const TrialConfig& cfg, int trial) {
  return cfg.losses[static_cast<std::size_t>(trial) % cfg.losses.size()];
}

// Argmin sets agree both ways.
double symmetric_distance(const PropertyValueSet& a, const PropertyValueSet& b) {
  return std::max(one_sided_hausdorff(a, b), one_sided_hausdorff(b, a));
}

// Intersection of point-like sets that are equal up to solver tolerance.
PropertyValueSet shared_values(const std::vector<PropertyValueSet>& sets, double theta_tol) {
  double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
  for (const auto& s : sets) {
    lo = std::max(lo, s.lo());
    hi = std::min(hi, s.hi());
  }
  if (lo > hi) {
    if (lo - hi > 2.0 * theta_tol) return {};
    lo = hi = 0.5 * (lo + hi);
  }
  return PropertyValueSet({Interval{lo, hi}});
}

}  // namespace

Distribution random_distribution(std::mt19937_64& rng, const OutcomeSpace& space) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(space.size());
  double sum = 0.0;
  for (double& x : w) sum += (x = expo(rng));
  for (double& x : w) x /= sum;
  return Distribution(space, std::move(w));
}

Instance random_instance(std::mt19937_64& rng, const TrialConfig& cfg, LossKind kind) {
  std::uniform_int_distribution<int> n_dist(2, cfg.n_outcomes);
  std::uniform_int_distribution<int> m_dist(1, cfg.n_generators);
  std::uniform_real_distribution<double> z_dist(-kOutcomeRange, kOutcomeRange);
  const int n = n_dist(rng);
  std::vector<double> z(n);
  do {
    for (double& x : z) x = z_dist(rng);
    std::sort(z.begin(), z.end());
  } while (std::adjacent_find(z.begin(), z.end()) != z.end());
  const OutcomeSpace space(std::move(z));

  const int m = m_dist(rng);
  std::vector<Distribution> gens;
  for (int j = 0; j < m; ++j) gens.push_back(random_distribution(rng, space));
  return Instance{CredalSet(std::move(gens)), random_loss(rng, kind),
                  PropertyDomain(-kDomainHalfWidth, kDomainHalfWidth)};
}

namespace {

// Distribution whose precise property under `spec` contains theta.
Distribution anchor_distribution(std::mt19937_64& rng, const OutcomeSpace& space, const LossSpec& spec,
                                 double theta) {
  const auto z = space.points();
  const std::size_t n = z.size();
  switch (spec.kind()) {
    case LossKind::squared:
    case LossKind::entropic: {
      // the statistic (mean, or E exp(gamma (Z - z_n))) is linear along the
      // segment from a random D to a point mass on the far end
      const auto d = random_distribution(rng, space);
      auto stat = [&](std::size_t i) {
        return spec.kind() == LossKind::squared ? z[i] : std::exp(spec.gamma() * (z[i] - z[n - 1]));
      };
      const double target = spec.kind() == LossKind::squared ? theta : std::exp(spec.gamma() * (theta - z[n - 1]));
      double sd = 0.0;
      for (std::size_t i = 0; i < n; ++i) sd += d[i] * stat(i);
      const std::size_t edge = sd > target ? 0 : n - 1;
      const double denom = sd - stat(edge);
      const double alpha = denom == 0.0 ? 1.0 : std::clamp((target - stat(edge)) / denom, 0.0, 1.0);
      return mix(d, Distribution::point_mass(space, edge), alpha);
    }
    case LossKind::absolute:
    case LossKind::pinball: {
      // put exactly tau of the mass at or below z_k and the rest above, so the
      // quantile set is [z_k, z_{k+1}]
      const double tau = spec.kind() == LossKind::absolute ? 0.5 : spec.tau();
      std::size_t k = 0;
      while (k + 2 < n && z[k + 1] <= theta) ++k;
      std::exponential_distribution<double> expo(1.0);
      std::vector<double> w(n);
      double below = 0.0, above = 0.0;
      for (std::size_t i = 0; i < n; ++i) (i <= k ? below : above) += (w[i] = expo(rng));
      for (std::size_t i = 0; i < n; ++i) w[i] *= i <= k ? tau / below : (1.0 - tau) / above;
      return Distribution(space, std::move(w));
    }
  }
  return Distribution::uniform(space);
}

}  // namespace

CredalSet manufacture_level_set_member(std::mt19937_64& rng, const OutcomeSpace& space, const LossSpec& spec,
                                       double theta) {
  std::vector<Distribution> gens;
  const int anchors = std::uniform_int_distribution<int>(1, 3)(rng);
  for (int i = 0; i < anchors; ++i) gens.push_back(anchor_distribution(rng, space, spec, theta));
  const double top = UpperRiskFunction(CredalSet(gens), spec)(theta);
  for (int i = 0; i < 3; ++i) {
    auto d = random_distribution(rng, space);
    if (UpperRiskFunction(CredalSet({d}), spec)(theta) <= top - 1e-8 * (1.0 + std::abs(top)))
      gens.push_back(std::move(d));
  }
  return CredalSet(std::move(gens));
}

CheckReport check_hull_invariance(const TrialConfig& cfg, Execution execution) {
  const auto& p = cfg.tolerances;
  return run_trials("hull_invariance", kHull, cfg, cfg.violation_tol, execution, [&](int t, std::mt19937_64& rng, TrialOutcome& o) {
    const auto inst = random_instance(rng, cfg, kind_for_trial(cfg, t));
    o.instance = describe(inst);
    std::vector<Distribution> aug(inst.set.generators().begin(), inst.set.generators().end());
    const int extra = std::uniform_int_distribution<int>(1, 3)(rng);
    std::exponential_distribution<double> expo(1.0);
    for (int e = 0; e < extra; ++e) {
      std::vector<double> c(inst.set.size());
      double sum = 0.0;
      for (double& x : c) sum += (x = expo(rng));
      std::vector<double> w(inst.set.space().size(), 0.0);
      for (std::size_t j = 0; j < c.size(); ++j) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] += c[j] / sum * inst.set[j][i];
      }
      aug.emplace_back(inst.set.space(), std::move(w));
    }
    const auto f = elicit(inst.set, inst.loss, inst.domain, p).argmin;
    const auto g = elicit(CredalSet(std::move(aug)), inst.loss, inst.domain, p).argmin;
    o.violation = symmetric_distance(f, g);
    o.detail = "f(P) = " + fmt(f) + ", f(P + mixtures) = " + fmt(g);
  });
}

CheckReport check_levelset_convexity(const TrialConfig& cfg, Execution execution) {
  const auto& p = cfg.tolerances;
  return run_trials("levelset_convexity", kLevelSet, cfg, cfg.violation_tol, execution,
                    [&](int t, std::mt19937_64& rng, TrialOutcome& o) {
                      const auto inst = random_instance(rng, cfg, kind_for_trial(cfg, t));
                      o.instance = describe(inst);
                      const auto f_p = elicit(inst.set, inst.loss, inst.domain, p).argmin;
                      const auto partner =
                          manufacture_level_set_member(rng, inst.set.space(), inst.loss, f_p.intervals()[0].mid());
                      const auto f_q = elicit(partner, inst.loss, inst.domain, p).argmin;
                      const auto shared = shared_values({f_p, f_q}, p.theta_tol);
                      if (shared.empty()) {
                        o.violation = std::numeric_limits<double>::infinity();
                        o.detail = "manufactured partner missed the level set: f(P) = " + fmt(f_p) +
                                   ", f(Q) = " + fmt(f_q) + ", Q = " + describe(partner, inst.loss, inst.domain);
                        return;
                      }
                      const double alpha = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
                      const auto combined = convex_combine_sets(inst.set, partner, alpha);
                      const auto f_c = elicit(combined, inst.loss, inst.domain, p).argmin;
                      o.violation = one_sided_hausdorff(shared, f_c);
                      o.detail = "shared " + fmt(shared) + ", alpha = " + fmt(alpha) + ", f(alpha P + (1-alpha) Q) = " +
                                 fmt(f_c) + ", Q = " + describe(partner, inst.loss, inst.domain);
                    });
}

CheckReport check_union_closure(const TrialConfig& cfg, Execution execution) {
  const auto& p = cfg.tolerances;
  return run_trials("union_closure", kUnion, cfg, cfg.violation_tol, execution, [&](int t, std::mt19937_64& rng, TrialOutcome& o) {
    const auto inst = random_instance(rng, cfg, kind_for_trial(cfg, t));
    o.instance = describe(inst);
    const auto f_p = elicit(inst.set, inst.loss, inst.domain, p).argmin;
    const double theta = f_p.intervals()[0].mid();
    std::vector<CredalSet> members{inst.set};
    std::vector<PropertyValueSet> values{f_p};
    const int partners = t % 2 == 0 ? 1 : 2;
    for (int k = 0; k < partners; ++k) {
      members.push_back(manufacture_level_set_member(rng, inst.set.space(), inst.loss, theta));
      values.push_back(elicit(members.back(), inst.loss, inst.domain, p).argmin);
    }
    const auto shared = shared_values(values, p.theta_tol);
    if (shared.empty()) {
      o.violation = std::numeric_limits<double>::infinity();
      o.detail = "manufactured partners missed the level set";
      return;
    }
    CredalSet u = members.front();
    for (std::size_t k = 1; k < members.size(); ++k) u = union_sets(u, members[k]);
    const auto f_u = elicit(u, inst.loss, inst.domain, p).argmin;
    o.violation = one_sided_hausdorff(shared, f_u);
    o.detail = "shared " + fmt(shared) + ", f(union of " + std::to_string(members.size()) + ") = " + fmt(f_u) +
               ", union = " + describe(u, inst.loss, inst.domain);
  });
}

CheckReport check_uniqueness(const TrialConfig& cfg, Execution execution) {
  const auto& p = cfg.tolerances;
  return run_trials("uniqueness", kUniqueness, cfg, 2.0 * p.theta_tol, execution, [&](int t, std::mt19937_64& rng, TrialOutcome& o) {
    const auto inst = random_instance(rng, cfg, kind_for_trial(cfg, t));
    o.instance = describe(inst);
    const auto f = elicit(inst.set, inst.loss, inst.domain, p).argmin;
    o.violation = f.max_width();
    o.asserted = inst.loss.strictly_convex();
    o.detail = "argmin " + fmt(f);
  });
}

CheckReport check_duality(const TrialConfig& cfg, Execution execution) {
  const auto& p = cfg.tolerances;
  return run_trials("duality", kDuality, cfg, cfg.violation_tol, execution, [&](int t, std::mt19937_64& rng, TrialOutcome& o) {
    const auto inst = random_instance(rng, cfg, kind_for_trial(cfg, t));
    o.instance = describe(inst);
    const auto wc = worst_case_distribution(inst.set, inst.loss, inst.domain, p);
    const double gap = wc.certificate_gap;
    // weak duality admits no slack beyond value_tol
    o.violation = gap < -p.value_tol ? std::numeric_limits<double>::infinity() : std::abs(gap);
    o.detail = "minimax - maximin = " + fmt(gap);
  });
}

CheckReport check_worst_case_inclusion(const TrialConfig& cfg, Execution execution) {
  const auto& p = cfg.tolerances;
  return run_trials("worst_case_inclusion", kInclusion, cfg, cfg.violation_tol, execution,
                    [&](int t, std::mt19937_64& rng, TrialOutcome& o) {
                      const auto inst = random_instance(rng, cfg, kind_for_trial(cfg, t));
                      o.instance = describe(inst);
                      try {
                        const auto r = check_inclusion(inst.set, inst.loss, inst.domain, p, cfg.violation_tol);
                        o.violation = r.max_violation;
                        o.detail = "f = " + fmt(r.elicited) + ", Theta(P*) = " + fmt(r.theta_star) +
                                   (r.strict ? " (strict)" : "");
                      } catch (const SolverError&) {
                        // only converged instances count for the set-valued losses
                        if (inst.loss.strictly_convex()) throw;
                        o.skipped = true;
                      }
                    });
}

CheckReport reproduce_intersection_counterexample(const SolverParams& params) {
  const OutcomeSpace space({0.0, 1.0, 2.0});
  auto d = [&](std::vector<double> w) { return Distribution(space, std::move(w)); };
  const auto loss = LossSpec::squared();
  const PropertyDomain domain(0.0, 2.0);
  struct Case {
    const char* label;
    CredalSet set;
    double expected;
  };
  const std::vector<Case> cases{
      {"f({(1,0,0),(0.5,0,0.5)}) = 1", CredalSet{d({1, 0, 0}), d({0.5, 0, 0.5})}, 1.0},
      {"f({(1,0,0),(0.25,0.5,0.25)}) = 1", CredalSet{d({1, 0, 0}), d({0.25, 0.5, 0.25})}, 1.0},
      {"f({(1,0,0)}) = 0", CredalSet{d({1, 0, 0})}, 0.0},
  };

  CheckReport report;
  report.check_name = "intersection_counterexample";
  report.tolerance = params.theta_tol;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& c = cases[i];
    ++report.trials_run;
    const auto f = elicit(c.set, loss, domain, params).argmin;
    const double v = symmetric_distance(f, PropertyValueSet::point(c.expected));
    report.max_violation = std::max(report.max_violation, v);
    if (v > report.tolerance) {
      const auto wc = worst_case_distribution(c.set, loss, domain, params);
      std::string pstar;
      for (double w : wc.distribution.weights()) pstar += (pstar.empty() ? "" : ", ") + fmt(w);
      report.failures.push_back({static_cast<int>(i), v, describe(c.set, loss, domain),
                                 std::string(c.label) + " does not hold: elicited " + fmt(f) +
                                     "; maximum-variance distribution in the hull is (" + pstar + ")"});
    }
  }
  return report;
}

std::vector<CheckReport> run_suite(const TrialConfig& cfg, Execution execution) {
  cfg.validate();
  return {check_hull_invariance(cfg, execution),
          check_levelset_convexity(cfg, execution),
          check_union_closure(cfg, execution),
          reproduce_intersection_counterexample(cfg.tolerances),
          check_uniqueness(cfg, execution),
          check_duality(cfg, execution),
          check_worst_case_inclusion(cfg, execution)};
}

}  // namespace credal
