#include <doctest.h>

#include "credal/errors.hpp"
#include "credal/property_lab.hpp"
#include "credal/scenario.hpp"

using namespace credal;

namespace {

TrialConfig small(int trials = 40) {
  TrialConfig cfg;
  cfg.trials = trials;
  return cfg;
}

bool same(const CheckReport& a, const CheckReport& b) { return to_json(a) == to_json(b); }

}  // namespace

TEST_CASE("trial config validation") {
  TrialConfig cfg;
  cfg.trials = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.n_outcomes = 9;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.n_generators = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.losses.clear();
  CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("random instances respect the configured ranges") {
  std::mt19937_64 rng(1);
  auto cfg = small();
  cfg.n_outcomes = 4;
  cfg.n_generators = 3;
  for (int i = 0; i < 100; ++i) {
    const auto inst = random_instance(rng, cfg, LossKind::pinball);
    CHECK(inst.set.space().size() >= 2);
    CHECK(inst.set.space().size() <= 4);
    CHECK(inst.set.size() <= 3);
    CHECK(inst.set.space().min() >= -3.0);
    CHECK(inst.set.space().max() <= 3.0);
    CHECK(inst.loss.tau() >= 0.1);
    CHECK(inst.loss.tau() <= 0.9);
  }
}

TEST_CASE("manufactured partners share the elicited value") {
  std::mt19937_64 rng(2);
  const OutcomeSpace s({-2.0, -1.0, 0.5, 1.5, 2.0});
  const PropertyDomain dom(-4.0, 4.0);
  for (const auto& spec : {LossSpec::squared(), LossSpec::absolute(), LossSpec::pinball(0.3), LossSpec::entropic(1.5)}) {
    for (double theta : {-1.5, 0.0, 0.7, 1.9}) {
      const auto q = manufacture_level_set_member(rng, s, spec, theta);
      CAPTURE(to_string(spec.kind()));
      CAPTURE(theta);
      CHECK(elicit(q, spec, dom).argmin.contains(theta, 1e-8));
    }
  }
}

TEST_CASE("structural checks pass on random instances") {
  const auto cfg = small();
  for (const auto& r : {check_hull_invariance(cfg), check_levelset_convexity(cfg), check_union_closure(cfg),
                        check_uniqueness(cfg), check_duality(cfg), check_worst_case_inclusion(cfg)}) {
    CAPTURE(r.check_name);
    CHECK(r.passed());
    CHECK(r.trials_run == cfg.trials);
    CHECK(r.max_violation <= r.tolerance);
  }
}

TEST_CASE("uniqueness with absolute loss reports widths without failing") {
  auto cfg = small(60);
  cfg.losses = {LossKind::absolute};
  cfg.n_outcomes = 2;
  cfg.n_generators = 1;
  const auto r = check_uniqueness(cfg);
  CHECK(r.passed());
  CHECK(r.max_violation == 0.0);
  REQUIRE_FALSE(r.notes.empty());
  CHECK(r.notes.front().find("unasserted") != std::string::npos);
}

TEST_CASE("intersection counterexample reproduction") {
  const auto r = reproduce_intersection_counterexample();
  CHECK(r.trials_run == 3);
  // the second set elicits 0.75: its variance-maximizing mixture has mean 0.75
  REQUIRE(r.failures.size() == 1);
  CHECK(r.failures[0].trial == 1);
  CHECK(r.failures[0].violation == doctest::Approx(0.25).epsilon(1e-8));
  CHECK(r.failures[0].detail.find("0.4375") != std::string::npos);
}

TEST_CASE("suite is deterministic and independent of execution mode") {
  const auto cfg = small(24);
  const auto a = run_suite(cfg, Execution::parallel);
  const auto b = run_suite(cfg, Execution::parallel);
  const auto c = run_suite(cfg, Execution::serial);
  REQUIRE(a.size() == 7);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(same(a[i], b[i]));
    CHECK(same(a[i], c[i]));
  }
}

TEST_CASE("seed changes the drawn instances") {
  auto cfg = small(20);
  const auto a = check_duality(cfg);
  cfg.seed = 43;
  const auto b = check_duality(cfg);
  CHECK(a.max_violation != b.max_violation);
}

TEST_CASE("failures carry a replayable instance") {
  // a violation tolerance of zero turns every inexact duality certificate into a failure
  auto cfg = small(20);
  cfg.violation_tol = 1e-300;
  const auto r = check_duality(cfg);
  REQUIRE_FALSE(r.failures.empty());
  const auto s = parse_scenario(Json::parse(r.failures.front().instance));
  CHECK(s.credal_set().size() >= 1);
}
