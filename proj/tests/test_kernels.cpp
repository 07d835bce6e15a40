#include <doctest.h>

#include "credal/minimax.hpp"
#include "credal/property_lab.hpp"

using namespace credal;

TEST_CASE("parallel grid oracle is bit-identical to the serial one") {
  std::mt19937_64 rng(31);
  TrialConfig cfg;
  for (auto kind : cfg.losses) {
    for (int i = 0; i < 5; ++i) {
      const auto inst = random_instance(rng, cfg, kind);
      const auto a = elicit_grid_oracle(inst.set, inst.loss, inst.domain, 50001, Execution::serial);
      const auto b = elicit_grid_oracle(inst.set, inst.loss, inst.domain, 50001, Execution::parallel);
      CHECK(a.argmin == b.argmin);
      CHECK(a.value == b.value);
      CHECK(a.active_generators == b.active_generators);
    }
  }
}

TEST_CASE("parallel trial fan-out matches the serial loop") {
  TrialConfig cfg;
  cfg.trials = 30;
  const auto a = check_levelset_convexity(cfg, Execution::serial);
  const auto b = check_levelset_convexity(cfg, Execution::parallel);
  CHECK(a.max_violation == b.max_violation);
  CHECK(a.failures.size() == b.failures.size());
  CHECK(a.trials_run == b.trials_run);
}
