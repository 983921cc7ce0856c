#include <benchmark/benchmark.h>

#include "aimforge/prv_sim.hpp"

namespace {

void BM_SimulateRun(benchmark::State& state) {
  const auto trials = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(aimforge::sim::simulate_run({0.3, 0.05, 0.2}, 3, 2, trials, 42, 1));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * trials));
}
BENCHMARK(BM_SimulateRun)->Arg(10000)->Arg(100000)->UseRealTime();

void BM_RefinementRecursion(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(aimforge::sim::acceptance_with_refinement_flawed(0.3, 3, 50, 0.2, 0.05));
  }
}
BENCHMARK(BM_RefinementRecursion);

}  // namespace
BENCHMARK_MAIN();
