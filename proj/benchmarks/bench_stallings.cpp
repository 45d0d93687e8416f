// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <random>

#include "vhtk/stallings.hpp"
#include "vhtk/words.hpp"

namespace {

void BM_Fold(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::vector<vh::Word> gens;
  for (int i = 0; i < 4; ++i) gens.push_back(vh::random_reduced_word(2, static_cast<int>(state.range(0)), rng));
  for (auto _ : state) benchmark::DoNotOptimize(vh::fold_and_core(2, gens).size());
}
BENCHMARK(BM_Fold)->RangeMultiplier(2)->Range(4, 64);

void BM_HeightOfPower(benchmark::State& state) {
  const vh::FoldedGraph z = vh::fold_and_core(2, {vh::Word(static_cast<std::size_t>(state.range(0)), 'a')});
  for (auto _ : state) benchmark::DoNotOptimize(vh::multiplicity_height(z).height);
}
BENCHMARK(BM_HeightOfPower)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);

void BM_BruteForceOracle(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(vh::brute_force_cyclic_height(2, "abAB", static_cast<int>(state.range(0))));
}
BENCHMARK(BM_BruteForceOracle)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_Malnormal(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::vector<vh::FoldedGraph> hs;
  for (int i = 0; i < state.range(0); ++i) hs.push_back(vh::fold_and_core(2, {vh::random_reduced_word(2, 5, rng)}));
  for (auto _ : state) benchmark::DoNotOptimize(vh::check_almost_malnormal(hs).malnormal);
}
BENCHMARK(BM_Malnormal)->DenseRange(1, 4);

}  // namespace

BENCHMARK_MAIN();
