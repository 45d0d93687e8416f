// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "vhtk/links.hpp"
#include "vhtk/samples.hpp"
#include "vhtk/subdivision.hpp"
#include "vhtk/walls.hpp"

namespace {

void BM_CheckNpc(benchmark::State& state) {
  const vh::CubeComplex x = vh::samples::ntorus(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(vh::check_npc(x).npc);
}
BENCHMARK(BM_CheckNpc)->DenseRange(1, 4);

void BM_WallComplex(benchmark::State& state) {
  const vh::CubeComplex x = vh::samples::ntorus(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(vh::wall_complex(x).size());
}
BENCHMARK(BM_WallComplex)->DenseRange(1, 4);

void BM_Subdivide(benchmark::State& state) {
  const vh::CubeComplex x = vh::samples::ntorus(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(vh::barycentric_subdivide(x).complex.size());
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * x.size()));
}
BENCHMARK(BM_Subdivide)->DenseRange(1, 4);

void BM_Specialness(benchmark::State& state) {
  const vh::CubeComplex x = vh::samples::ntorus(3);
  const vh::WallSystem ws = vh::wall_complex(x);
  for (auto _ : state) benchmark::DoNotOptimize(vh::specialness_report(x, ws).special);
}
BENCHMARK(BM_Specialness);

}  // namespace

BENCHMARK_MAIN();
