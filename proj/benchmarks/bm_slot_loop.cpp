#include <benchmark/benchmark.h>

#include "rasim/policies.hpp"
#include "rasim/simulation.hpp"

namespace {

using namespace rasim;

void run(benchmark::State& state, PolicyKind kind) {
  const auto nodes = static_cast<std::size_t>(state.range(0));
  RunParams p;
  p.nodes = nodes;
  p.horizon = 20'000;
  p.policy.kind = kind;
  if (kind == PolicyKind::kEbt) p.policy.beta = default_threshold(kind, nodes, 1.0, 0.0);
  if (kind == PolicyKind::kSat) {
    p.policy.gamma = static_cast<std::int64_t>(default_threshold(kind, nodes, 1.0, 0.0));
  }
  p.policy.p = 1.0 / static_cast<double>(nodes);
  for (auto _ : state) {
    auto r = simulate(p);
    benchmark::DoNotOptimize(r.report.naee);
  }
  state.SetItemsProcessed(state.iterations() * (p.horizon + 1) * static_cast<std::int64_t>(nodes));
  state.SetLabel("items = node-slots");
}

void BM_Ebt(benchmark::State& s) { run(s, PolicyKind::kEbt); }
void BM_Sat(benchmark::State& s) { run(s, PolicyKind::kSat); }
void BM_MaxWeight(benchmark::State& s) { run(s, PolicyKind::kCentralMw); }
void BM_Aloha(benchmark::State& s) { run(s, PolicyKind::kPseudoBayesAloha); }

BENCHMARK(BM_Ebt)->Arg(50)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sat)->Arg(50)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MaxWeight)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Aloha)->Arg(500)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
