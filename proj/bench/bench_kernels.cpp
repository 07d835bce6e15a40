// Serial reference vs OpenMP kernels: the grid oracle and the trial fan-out.

#include <benchmark/benchmark.h>

#include "credal/minimax.hpp"
#include "credal/property_lab.hpp"

using namespace credal;

namespace {

Instance fixed_instance(LossKind kind) {
  std::mt19937_64 rng(99);
  TrialConfig cfg;
  return random_instance(rng, cfg, kind);
}

void grid_oracle(benchmark::State& state, Execution execution) {
  const auto inst = fixed_instance(LossKind::entropic);
  const auto points = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(elicit_grid_oracle(inst.set, inst.loss, inst.domain, points, execution));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void suite(benchmark::State& state, Execution execution) {
  TrialConfig cfg;
  cfg.trials = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_suite(cfg, execution));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(grid_oracle, serial, Execution::serial)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(grid_oracle, parallel, Execution::parallel)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(suite, serial, Execution::serial)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(suite, parallel, Execution::parallel)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
