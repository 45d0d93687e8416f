// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "vhtk/pipeline.hpp"
#include "vhtk/samples.hpp"

namespace {

void BM_Demo(benchmark::State& state, const std::string& name) {
  const vh::CubeComplex x = vh::samples::by_name(name);
  vh::PipelineOptions opts;
  opts.jobs = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(vh::run_pipeline(x, opts)->cover);
}
BENCHMARK_CAPTURE(BM_Demo, torus, std::string("torus"))->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Demo, rose, std::string("rose"))->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Demo, t3, std::string("t3"))->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
