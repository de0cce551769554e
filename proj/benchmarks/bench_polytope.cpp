#include <benchmark/benchmark.h>

#include "graphconfig/cells.hpp"
#include "graphconfig/polytope.hpp"

using namespace graphconfig;

namespace {

ParametricPolytope distinct_edges(std::size_t n) {
  const MetricGraph g = corolla(static_cast<int>(n));
  std::vector<Placement> coords;
  for (std::size_t i = 0; i < n; ++i) coords.push_back(Placement::on_edge(i));
  return inequality_system(CellDescriptor(coords), g, node_distances(g));
}

void BM_VertexEnumeratorBuild(benchmark::State& state) {
  const ParametricPolytope p = distinct_edges(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(VertexEnumerator(p).bases().size());
  state.counters["rows"] = static_cast<double>(p.size());
}
BENCHMARK(BM_VertexEnumeratorBuild)->Arg(2)->Arg(3);

void BM_TypeAt(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const ParametricPolytope p = distinct_edges(n);
  const VertexEnumerator en(p);
  const RestraintVector r(n, Rational(1, 2));
  for (auto _ : state) benchmark::DoNotOptimize(en.type_at(r).vertices.size());
}
BENCHMARK(BM_TypeAt)->Arg(2)->Arg(3);

void BM_FacePoset(benchmark::State& state) {
  const ParametricPolytope p = distinct_edges(3);
  const PolytopeType t = polytope_type(p, RestraintVector(3, Rational(1, 2)));
  for (auto _ : state) benchmark::DoNotOptimize(face_poset(p, t).faces.size());
}
BENCHMARK(BM_FacePoset);

}  // namespace
