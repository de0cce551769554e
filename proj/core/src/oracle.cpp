#include "graphconfig/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "graphconfig/errors.hpp"
#include "parallel.hpp"

namespace graphconfig {

namespace {

struct GridEdge {
  std::uint32_t lo;
  std::uint32_t hi;
};

struct Grid {
  std::vector<GraphPoint> points;
  std::vector<GridEdge> edges;
  std::vector<std::vector<std::uint32_t>> up;  // per point: grid edges whose lo end it is
};

Grid make_grid(const MetricGraph& g, const Rational& mesh) {
  Grid grid;
  for (std::size_t v = 0; v < g.node_count(); ++v) grid.points.push_back(GraphPoint::at_node(v));
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Rational steps = g.edge(e).length / mesh;
    if (denominator(steps) != 1) {
      throw InputError("mesh " + to_string(mesh) + " does not divide the length of edge " + std::to_string(e));
    }
    const long m = numerator(steps).convert_to<long>();
    std::uint32_t prev = static_cast<std::uint32_t>(g.edge(e).a);
    for (long k = 1; k <= m; ++k) {
      std::uint32_t cur;
      if (k == m) {
        cur = static_cast<std::uint32_t>(g.edge(e).b);
      } else {
        cur = static_cast<std::uint32_t>(grid.points.size());
        grid.points.push_back(GraphPoint::on(e, mesh * k));
      }
      grid.edges.push_back({std::min(prev, cur), std::max(prev, cur)});
      prev = cur;
    }
  }
  grid.up.resize(grid.points.size());
  for (std::uint32_t k = 0; k < grid.edges.size(); ++k) grid.up[grid.edges[k].lo].push_back(k);
  return grid;
}

struct DisjointSets {
  std::vector<std::uint32_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

std::size_t gf2_rank(std::vector<std::vector<std::uint32_t>> columns) {
  std::unordered_map<std::uint32_t, std::size_t> owner;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    auto& col = columns[c];
    std::sort(col.begin(), col.end());
    while (!col.empty()) {
      auto it = owner.find(col.back());
      if (it == owner.end()) break;
      std::vector<std::uint32_t> sum;
      const auto& other = columns[it->second];
      std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(), std::back_inserter(sum));
      col = std::move(sum);
    }
    if (!col.empty()) {
      owner.emplace(col.back(), c);
      ++rank;
    }
  }
  return rank;
}

}  // namespace

DiscreteInvariants discrete_invariants(const MetricGraph& g, std::size_t n, const RestraintVector& r,
                                       const Rational& mesh) {
  if (mesh <= 0) throw InputError("mesh must be positive");
  if (n == 0 || r.points() != n) throw InputError("restraint vector does not match the number of points");
  const Grid grid = make_grid(g, mesh);
  const std::size_t P = grid.points.size();
  const DistanceMatrix delta = node_distances(g);

  // far[p * P + q][pair]: whether points p, q may hold coordinates of that pair.
  std::vector<Rational> dist(P * P);
  for (std::size_t p = 0; p < P; ++p) {
    for (std::size_t q = p; q < P; ++q) {
      dist[p * P + q] = dist[q * P + p] = point_distance(g, delta, grid.points[p], grid.points[q]);
    }
  }
  auto fits = [&](std::uint32_t p, std::uint32_t q, std::size_t i, std::size_t j) {
    return dist[p * P + q] >= r.at(i, j);
  };

  // Admissible tuples, enumerated per first coordinate in parallel.
  std::vector<std::vector<std::uint32_t>> by_first(P);
  detail::parallel_for(P, [&](std::size_t first) {
    std::vector<std::uint32_t> tuple(n);
    tuple[0] = static_cast<std::uint32_t>(first);
    auto& out = by_first[first];
    auto rec = [&](auto&& self, std::size_t k) -> void {
      if (k == n) {
        out.insert(out.end(), tuple.begin(), tuple.end());
        return;
      }
      for (std::uint32_t p = 0; p < P; ++p) {
        bool ok = true;
        for (std::size_t i = 0; i < k && ok; ++i) ok = fits(tuple[i], p, i, k);
        if (!ok) continue;
        tuple[k] = p;
        self(self, k + 1);
      }
    };
    rec(rec, 1);
  });
  std::vector<std::uint32_t> tuples;
  for (auto& part : by_first) tuples.insert(tuples.end(), part.begin(), part.end());

  DiscreteInvariants out;
  out.grid_points = P;
  out.vertices = tuples.size() / n;
  if (out.vertices == 0) return out;

  auto encode = [&](const std::uint32_t* t) {
    std::uint64_t key = 0;
    for (std::size_t i = n; i-- > 0;) key = key * P + t[i];
    return key;
  };
  std::unordered_map<std::uint64_t, std::uint32_t> id;
  id.reserve(out.vertices * 2);
  for (std::uint32_t v = 0; v < out.vertices; ++v) id.emplace(encode(&tuples[v * n]), v);
  auto lookup = [&](const std::vector<std::uint32_t>& t) -> std::optional<std::uint32_t> {
    auto it = id.find(encode(t.data()));
    if (it == id.end()) return std::nullopt;
    return it->second;
  };

  // Edges keyed by (lower tuple, moving coordinate, grid edge).
  const std::uint64_t G = grid.edges.size();
  std::unordered_map<std::uint64_t, std::uint32_t> edge_id;
  auto edge_key = [&](std::uint32_t v, std::size_t i, std::uint32_t ge) { return (std::uint64_t{v} * n + i) * G + ge; };
  DisjointSets sets(out.vertices);
  std::vector<std::uint32_t> t(n);
  for (std::uint32_t v = 0; v < out.vertices; ++v) {
    for (std::size_t i = 0; i < n; ++i) {
      std::copy_n(&tuples[v * n], n, t.begin());
      for (auto ge : grid.up[t[i]]) {
        t[i] = grid.edges[ge].hi;
        if (auto w = lookup(t)) {
          edge_id.emplace(edge_key(v, i, ge), static_cast<std::uint32_t>(edge_id.size()));
          sets.unite(v, *w);
        }
        t[i] = grid.edges[ge].lo;
      }
    }
  }
  out.edges = edge_id.size();

  std::vector<std::vector<std::uint32_t>> squares;
  for (std::uint32_t v = 0; v < out.vertices; ++v) {
    std::copy_n(&tuples[v * n], n, t.begin());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        for (auto gi : grid.up[t[i]]) {
          for (auto gj : grid.up[t[j]]) {
            auto e1 = edge_id.find(edge_key(v, i, gi));
            auto e2 = edge_id.find(edge_key(v, j, gj));
            if (e1 == edge_id.end() || e2 == edge_id.end()) continue;
            auto s = t;
            s[i] = grid.edges[gi].hi;
            const auto vi = lookup(s);
            s[j] = grid.edges[gj].hi;
            if (!lookup(s)) continue;
            s[i] = grid.edges[gi].lo;
            const auto vj = lookup(s);
            if (!vi || !vj) continue;
            auto e3 = edge_id.find(edge_key(*vi, j, gj));
            auto e4 = edge_id.find(edge_key(*vj, i, gi));
            squares.push_back({e1->second, e2->second, e3->second, e4->second});
          }
        }
      }
    }
  }
  out.squares = squares.size();

  for (std::uint32_t v = 0; v < out.vertices; ++v) out.components += sets.find(v) == v;
  out.graph_cycle_rank =
      static_cast<long>(out.edges) - static_cast<long>(out.vertices) + static_cast<long>(out.components);
  out.cycle_rank = out.graph_cycle_rank - static_cast<long>(gf2_rank(std::move(squares)));
  return out;
}

Rational auto_mesh(const MetricGraph& g, const RestraintVector& r, const std::vector<Rational>& extra) {
  BigInt l = 1;
  for (const auto& e : g.edges()) l = lcm_of_denominators(l, e.length);
  for (const auto& v : r.values()) l = lcm_of_denominators(l, v);
  for (const auto& v : extra) l = lcm_of_denominators(l, v);
  return Rational(BigInt(1), BigInt(2 * l));
}

// ---------------------------------------------------------------------------
// Face poset by exhaustion

namespace {

/// Unique solution of the square system M x = b, if any (Gauss-Jordan).
std::optional<std::vector<Rational>> solve(std::vector<std::vector<Rational>> m, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(m[piv], m[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || m[row][col] == 0) continue;
      const Rational f = m[row][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[row][k] -= f * m[col][k];
      b[row] -= f * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= m[i][i];
  return b;
}

int affine_dimension(const std::vector<const std::vector<Rational>*>& pts) {
  if (pts.size() <= 1) return 0;
  std::vector<std::vector<Rational>> rows;
  for (std::size_t k = 1; k < pts.size(); ++k) {
    std::vector<Rational> d(pts[0]->size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = (*pts[k])[i] - (*pts[0])[i];
    rows.push_back(std::move(d));
  }
  int rank = 0;
  const std::size_t cols = rows.front().size();
  for (std::size_t col = 0; col < cols && static_cast<std::size_t>(rank) < rows.size(); ++col) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[static_cast<std::size_t>(rank)]);
    const auto& pr = rows[static_cast<std::size_t>(rank)];
    for (std::size_t row = static_cast<std::size_t>(rank) + 1; row < rows.size(); ++row) {
      if (rows[row][col] == 0) continue;
      const Rational f = rows[row][col] / pr[col];
      for (std::size_t k = col; k < cols; ++k) rows[row][k] -= f * pr[k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

FacePoset bruteforce_face_poset(const ParametricPolytope& p, const RestraintVector& r) {
  const std::size_t rows = p.size();
  const std::size_t dim = p.dimension();
  if (rows > 14 || dim > 3) throw InputError("brute-force face poset is limited to 14 rows and dimension 3");
  std::vector<Rational> b(rows);
  for (std::size_t l = 0; l < rows; ++l) b[l] = p.row(l).rhs(r);
  auto row_value = [&](std::size_t l, const std::vector<Rational>& x) {
    Rational s = 0;
    for (std::size_t i = 0; i < dim; ++i) s += p.row(l).lhs[i] * x[i];
    return s;
  };

  // Every feasible solution of a square subsystem.
  std::set<std::vector<Rational>> found;
  std::vector<std::size_t> pick(dim);
  auto rec = [&](auto&& self, std::size_t k, std::size_t start) -> void {
    if (k == dim) {
      std::vector<std::vector<Rational>> m;
      std::vector<Rational> rhs;
      for (auto l : pick) {
        m.emplace_back(p.row(l).lhs.begin(), p.row(l).lhs.end());
        rhs.push_back(b[l]);
      }
      auto x = solve(std::move(m), std::move(rhs));
      if (!x) return;
      for (std::size_t l = 0; l < rows; ++l) {
        if (row_value(l, *x) > b[l]) return;
      }
      found.insert(std::move(*x));
      return;
    }
    for (std::size_t l = start; l < rows; ++l) {
      pick[k] = l;
      self(self, k + 1, l + 1);
    }
  };
  rec(rec, 0, 0);
  const std::vector<std::vector<Rational>> vertices(found.begin(), found.end());

  std::vector<std::uint32_t> tight(vertices.size(), 0);
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    for (std::size_t l = 0; l < rows; ++l) {
      if (row_value(l, vertices[v]) == b[l]) tight[v] |= 1u << l;
    }
  }
  std::set<std::vector<bool>> vertex_sets;
  for (std::uint32_t s = 0; s < (1u << rows); ++s) {
    std::vector<bool> members(vertices.size());
    bool any = false;
    for (std::size_t v = 0; v < vertices.size(); ++v) {
      members[v] = (tight[v] & s) == s;
      any = any || members[v];
    }
    if (any) vertex_sets.insert(std::move(members));
  }

  FacePoset poset;
  for (const auto& members : vertex_sets) {
    std::uint32_t common = ~0u;
    std::vector<const std::vector<Rational>*> pts;
    for (std::size_t v = 0; v < vertices.size(); ++v) {
      if (!members[v]) continue;
      common &= tight[v];
      pts.push_back(&vertices[v]);
    }
    Face face;
    for (std::size_t l = 0; l < rows; ++l) {
      if (common & (1u << l)) face.labels.insert(l);
    }
    face.dimension = affine_dimension(pts);
    poset.faces.push_back(face);
  }
  std::sort(poset.faces.begin(), poset.faces.end(), [](const Face& a, const Face& c) {
    return std::tie(a.dimension, a.labels) < std::tie(c.dimension, c.labels);
  });
  return poset;
}

}  // namespace graphconfig
