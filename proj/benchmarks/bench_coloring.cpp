// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <random>

#include "vhtk/coloring.hpp"

namespace {

vh::SymmetricGraph cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return vh::SymmetricGraph(n, e);
}

void BM_Greedy(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::bernoulli_distribution coin(0.1);
  const int n = static_cast<int>(state.range(0));
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) e.emplace_back(u, v);
  const vh::SymmetricGraph g(n, e);
  for (auto _ : state) benchmark::DoNotOptimize(vh::greedy_coloring(g));
}
BENCHMARK(BM_Greedy)->RangeMultiplier(4)->Range(16, 1024);

// Exact pushforward of the uniform measure under the chain on C_n.
void BM_PushforwardChain(benchmark::State& state) {
  const vh::SymmetricGraph g = cycle(static_cast<int>(state.range(0)));
  const int palette = 5;
  const auto op = [&](const vh::Assignment& c) { return vh::project_chain(g, c, palette); };
  const vh::Distribution mu = vh::uniform_product(g, palette);
  for (auto _ : state) benchmark::DoNotOptimize(vh::weight(g, vh::pushforward(mu, op, 3)));
}
BENCHMARK(BM_PushforwardChain)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

void BM_ProperMeasure(benchmark::State& state) {
  const vh::SymmetricGraph g = cycle(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(vh::proper_coloring_measure(g, 3).atoms.size());
}
BENCHMARK(BM_ProperMeasure)->DenseRange(5, 11, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
