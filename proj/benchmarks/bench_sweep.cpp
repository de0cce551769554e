#include <benchmark/benchmark.h>

#include "graphconfig/complex.hpp"
#include "graphconfig/sweep.hpp"

using namespace graphconfig;

namespace {

void BM_CellAtlas(benchmark::State& state) {
  const MetricGraph g = corolla(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(CellAtlas(g, 2).size());
}
BENCHMARK(BM_CellAtlas)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_BuildComplex(benchmark::State& state) {
  const CellAtlas atlas(corolla(static_cast<int>(state.range(0))), 2);
  const RestraintVector r(2, Rational(2));
  for (auto _ : state) benchmark::DoNotOptimize(build_complex(atlas, r).cells().size());
}
BENCHMARK(BM_BuildComplex)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
  const CellAtlas atlas(corolla(static_cast<int>(state.range(0))), 2);
  for (auto _ : state) benchmark::DoNotOptimize(sweep_types(atlas, Ray::scalar(2)).intervals.size());
}
BENCHMARK(BM_Sweep)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
