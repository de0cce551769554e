#pragma once

#include <random>
#include <string>
#include <vector>

#include "graphconfig/cells.hpp"
#include "graphconfig/metric_graph.hpp"
#include "graphconfig/polytope.hpp"

namespace graphconfig::testing {

inline Rational Q(const std::string& s) { return parse_rational(s); }

inline MetricGraph single_edge() { return parse_graph("a b 1\n"); }
inline MetricGraph three_star() { return parse_graph("h x 1\nh y 1\nh z 1\n"); }
/// Edge a-b of length 3 shortcut by a path of length 2, so δ(a,b) = 2 < L.
inline MetricGraph shortcut_triangle() { return parse_graph("a b 3\na c 1\nc b 1\n"); }
inline MetricGraph parallel_pair() { return parse_graph("a b 1\na b 2\n"); }
inline MetricGraph loop_with_tail() { return parse_graph("v v 2\nv w 1\n"); }

struct NamedGraph {
  std::string name;
  MetricGraph graph;
};

/// The fixed graphs every cross-check runs on.
inline std::vector<NamedGraph> test_graphs() {
  return {{"single_edge", single_edge()},           {"three_star", three_star()},
          {"shortcut_triangle", shortcut_triangle()}, {"parallel_pair", parallel_pair()},
          {"loop_with_tail", loop_with_tail()},       {"corolla3", corolla(3)},
          {"corolla4", corolla(4)}};
}

/// Connected graph with `edges` edges: a random spanning tree, then extra
/// edges (parallel ones allowed). Lengths p/q with q <= 4, between 1/2 and 3.
inline MetricGraph random_graph(std::mt19937& rng, int edges) {
  const int nodes = std::uniform_int_distribution<int>(2, edges + 1)(rng);
  std::uniform_int_distribution<int> den(1, 4);
  auto length = [&] {
    const int q = den(rng);
    const int p = std::uniform_int_distribution<int>((q + 1) / 2, 3 * q)(rng);
    return Rational(p, q);
  };
  std::vector<MetricGraph::EdgeSpec> spec;
  for (int v = 1; v < nodes; ++v) {
    const int u = std::uniform_int_distribution<int>(0, v - 1)(rng);
    spec.push_back({"v" + std::to_string(u), "v" + std::to_string(v), length()});
  }
  std::uniform_int_distribution<int> pick(0, nodes - 1);
  while (static_cast<int>(spec.size()) < edges) {
    int a = pick(rng);
    int b = pick(rng);
    if (a == b) b = (a + 1) % nodes;
    spec.push_back({"v" + std::to_string(a), "v" + std::to_string(b), length()});
  }
  return MetricGraph(spec);
}

/// A bounded system in `dim` variables: the box 0 <= x_i <= c_i plus
/// `extra` random rows with small integer constants, over three pairs.
inline ParametricPolytope random_system(std::mt19937& rng, std::size_t dim, std::size_t extra) {
  const std::size_t pairs = 3;
  std::uniform_int_distribution<int> small(0, 4);
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<ConstraintRow> rows;
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<int> lo(dim, 0), hi(dim, 0);
    lo[i] = -1;
    hi[i] = 1;
    rows.push_back({"lo" + std::to_string(i), lo, {Rational(0), std::vector<int>(pairs, 0)}});
    rows.push_back({"hi" + std::to_string(i), hi, {Rational(small(rng) + 1), std::vector<int>(pairs, 0)}});
  }
  std::uniform_int_distribution<std::size_t> var(0, dim - 1);
  for (std::size_t k = 0; k < extra; ++k) {
    std::vector<int> lhs(dim, 0);
    const std::size_t i = var(rng);
    lhs[i] = coin(rng) ? 1 : -1;
    if (dim > 1 && coin(rng)) {
      std::size_t j = var(rng);
      if (j == i) j = (i + 1) % dim;
      lhs[j] = coin(rng) ? 1 : -1;
    }
    std::vector<int> coeffs(pairs, 0);
    coeffs[std::uniform_int_distribution<std::size_t>(0, pairs - 1)(rng)] = -1;
    rows.push_back({"x" + std::to_string(k), lhs, {Rational(small(rng) + 1), coeffs}});
  }
  return ParametricPolytope(dim, pairs, rows);
}

/// Random restraint over `points` coordinates with components p/4 in [0, hi].
inline RestraintVector random_restraint(std::mt19937& rng, std::size_t points, int hi_quarters) {
  std::uniform_int_distribution<int> q(0, hi_quarters);
  std::vector<Rational> v(pair_count(points));
  for (auto& x : v) x = Rational(q(rng), 4);
  return RestraintVector(points, v);
}

}  // namespace graphconfig::testing
