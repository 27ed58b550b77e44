#include <benchmark/benchmark.h>

#include <vector>

#include "rasim/process.hpp"
#include "rasim/random.hpp"

namespace {

using namespace rasim;

void BM_Normal(benchmark::State& state) {
  NoiseStream s(1, StreamKind::kSource, 0);
  for (auto _ : state) benchmark::DoNotOptimize(s.normal());
  state.SetItemsProcessed(state.iterations());
}

void BM_Uniform(benchmark::State& state) {
  NoiseStream s(1, StreamKind::kDecision, 0);
  for (auto _ : state) benchmark::DoNotOptimize(s.uniform());
  state.SetItemsProcessed(state.iterations());
}

void BM_StepSources(benchmark::State& state) {
  const auto nodes = static_cast<std::size_t>(state.range(0));
  auto src = SourceState::initial(nodes, 1.0);
  auto streams = make_source_streams(1, nodes);
  for (auto _ : state) {
    step_sources(src, streams);
    benchmark::DoNotOptimize(src.values.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(nodes));
}

BENCHMARK(BM_Normal);
BENCHMARK(BM_Uniform);
BENCHMARK(BM_StepSources)->Arg(500);

}  // namespace

BENCHMARK_MAIN();
