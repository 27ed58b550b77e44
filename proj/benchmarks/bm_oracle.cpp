#include <benchmark/benchmark.h>

#include "rasim/oracle.hpp"

namespace {

using namespace rasim;

void BM_Brownian(benchmark::State& state) {
  BrownianOptions o;
  o.a = 1.0;
  o.dt = 1e-3;
  o.paths = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(brownian_hitting_moments(o).j.mean);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Walk(benchmark::State& state) {
  WalkOptions o;
  o.beta = 36.8665;
  o.sigma = 1.0;
  o.paths = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(random_walk_hitting_moments(o).j.mean);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

BENCHMARK(BM_Brownian)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Walk)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
