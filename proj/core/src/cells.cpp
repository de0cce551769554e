#include "graphconfig/cells.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "graphconfig/errors.hpp"

namespace graphconfig {

// ---------------------------------------------------------------------------
// CellDescriptor

CellDescriptor::CellDescriptor(std::vector<Placement> coords) : coords_(std::move(coords)) {
  // (edge, block) -> coordinates, then order variables by smallest coordinate.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> blocks;
  std::map<std::size_t, std::set<std::size_t>> ranks;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    const auto& p = coords_[i];
    if (!p.on_edge()) {
      if (p.block != 0) throw InputError("node placement carries a block rank");
      continue;
    }
    blocks[{p.index, p.block}].push_back(i);
    ranks[p.index].insert(p.block);
  }
  for (const auto& [edge, used] : ranks) {
    if (*used.rbegin() + 1 != used.size()) {
      throw InputError("block ranks on edge " + std::to_string(edge) + " are not contiguous from 0");
    }
  }
  for (auto& [key, members] : blocks) variables_.push_back(std::move(members));
  std::sort(variables_.begin(), variables_.end());
  variable_of_.assign(coords_.size(), std::nullopt);
  for (std::size_t v = 0; v < variables_.size(); ++v) {
    for (auto i : variables_[v]) variable_of_[i] = v;
  }
}

std::optional<std::size_t> CellDescriptor::variable_of(std::size_t coord) const { return variable_of_.at(coord); }

std::string CellDescriptor::to_string() const {
  std::map<std::size_t, std::size_t> per_edge;
  for (const auto& p : coords_) {
    if (p.on_edge()) ++per_edge[p.index];
  }
  std::ostringstream out;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i > 0) out << ", ";
    const auto& p = coords_[i];
    if (!p.on_edge()) {
      out << 'n' << p.index;
    } else if (per_edge[p.index] == 1) {
      out << 'e' << p.index;
    } else {
      out << 'e' << p.index << '#' << p.block;
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

/// All ordered set partitions of `items`, as block-rank vectors aligned with items.
std::vector<std::vector<std::size_t>> ordered_partitions(std::size_t k, bool total_only) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> rank(k, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == k) {
      std::vector<bool> used(k, false);
      for (auto r : rank) used[r] = true;
      const auto m = static_cast<std::size_t>(std::count(used.begin(), used.end(), true));
      for (std::size_t r = 0; r < m; ++r) {
        if (!used[r]) return;
      }
      if (total_only && m != k) return;
      out.push_back(rank);
      return;
    }
    for (std::size_t r = 0; r < k; ++r) {
      rank[i] = r;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

/// Expands an assignment of coordinates to nodes/edges into cells.
void expand_blocks(const std::vector<Placement>& base, bool total_only, std::vector<CellDescriptor>& out) {
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (base[i].on_edge()) groups[base[i].index].push_back(i);
  }
  std::vector<std::vector<std::size_t>> members;
  std::vector<std::vector<std::vector<std::size_t>>> choices;
  for (const auto& [edge, coords] : groups) {
    members.push_back(coords);
    choices.push_back(ordered_partitions(coords.size(), total_only));
  }
  std::vector<Placement> current = base;
  std::function<void(std::size_t)> rec = [&](std::size_t g) {
    if (g == members.size()) {
      out.emplace_back(current);
      return;
    }
    for (const auto& ranks : choices[g]) {
      for (std::size_t k = 0; k < members[g].size(); ++k) current[members[g][k]].block = ranks[k];
      rec(g + 1);
    }
  };
  rec(0);
}

std::vector<CellDescriptor> enumerate_cells(const MetricGraph& g, std::size_t n, bool maximal_only) {
  const std::size_t V = maximal_only ? 0 : g.node_count();
  const std::size_t E = g.edge_count();
  std::vector<CellDescriptor> out;
  std::vector<std::size_t> choice(n, 0);
  while (true) {
    std::vector<Placement> base(n);
    for (std::size_t i = 0; i < n; ++i) {
      base[i] = choice[i] < V ? Placement::at_node(choice[i]) : Placement::on_edge(choice[i] - V);
    }
    expand_blocks(base, maximal_only, out);
    std::size_t i = 0;
    while (i < n && ++choice[i] == V + E) choice[i++] = 0;
    if (i == n) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<CellDescriptor> maximal_cells(const MetricGraph& g, std::size_t n) {
  if (n == 0) throw InputError("number of points must be at least 1");
  return enumerate_cells(g, n, true);
}

std::vector<CellDescriptor> all_cells(const MetricGraph& g, std::size_t n) {
  if (n == 0) throw InputError("number of points must be at least 1");
  return enumerate_cells(g, n, false);
}

// ---------------------------------------------------------------------------
// Inequality systems

namespace {

std::string label(const char* family, std::size_t i) { return std::string(family) + "[" + std::to_string(i + 1) + "]"; }

std::string label(const char* family, std::size_t i, std::size_t j) {
  return std::string(family) + "[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]";
}

class RowBuilder {
 public:
  RowBuilder(std::size_t dim, std::size_t points) : dim_(dim), points_(points) {}

  void add(std::string name, std::initializer_list<std::pair<std::size_t, int>> lhs, Rational constant,
           std::optional<std::pair<std::size_t, std::size_t>> pair) {
    ConstraintRow row;
    row.label = std::move(name);
    row.lhs.assign(dim_, 0);
    for (auto [var, coef] : lhs) row.lhs[var] += coef;
    row.rhs.constant = std::move(constant);
    row.rhs.coeffs.assign(pair_count(points_), 0);
    if (pair) row.rhs.coeffs[pair_index(points_, pair->first, pair->second)] = -1;
    rows_.push_back(std::move(row));
  }

  std::vector<ConstraintRow> take() { return std::move(rows_); }

 private:
  std::size_t dim_;
  std::size_t points_;
  std::vector<ConstraintRow> rows_;
};

}  // namespace

ParametricPolytope inequality_system(const CellDescriptor& cell, const MetricGraph& g, const DistanceMatrix& delta) {
  const std::size_t dim = cell.dimension();
  if (dim == 0) throw InputError("zero-dimensional cell " + cell.to_string() + " has no inequality system");
  const std::size_t n = cell.points();
  RowBuilder rows(dim, n);

  const auto& vars = cell.variables();
  for (std::size_t v = 0; v < vars.size(); ++v) {
    const std::size_t rep = vars[v].front();
    const Edge& e = g.edge(cell[rep].index);
    rows.add(label("C1", rep), {{v, -1}}, Rational(0), std::nullopt);
    rows.add(label("C2", rep), {{v, 1}}, e.length, std::nullopt);
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Placement& pi = cell[i];
      const Placement& pj = cell[j];
      const auto pair = std::make_optional(std::pair{i, j});
      if (!pi.on_edge() && !pj.on_edge()) {
        rows.add(label("Z", i, j), {}, delta(pi.index, pj.index), pair);
        continue;
      }
      if (pi.on_edge() && pj.on_edge() && pi.index == pj.index) {
        if (pi.block == pj.block) {
          rows.add(label("Z", i, j), {}, Rational(0), pair);
          continue;
        }
        const Edge& e = g.edge(pi.index);
        const std::size_t lo = pi.block < pj.block ? i : j;
        const std::size_t hi = lo == i ? j : i;
        const std::size_t vlo = *cell.variable_of(lo);
        const std::size_t vhi = *cell.variable_of(hi);
        if (vars[vlo].front() == lo && vars[vhi].front() == hi) {
          rows.add(label("E1", lo, hi), {{vlo, 1}, {vhi, -1}}, Rational(0), std::nullopt);
        }
        rows.add(label("E2", lo, hi), {{vlo, 1}, {vhi, -1}}, Rational(0), pair);
        rows.add(label("E3", lo, hi), {{vlo, -1}, {vhi, 1}}, delta(e.a, e.b) + e.length, pair);
        continue;
      }
      if (pi.on_edge() && pj.on_edge()) {
        const Edge& ei = g.edge(pi.index);
        const Edge& ej = g.edge(pj.index);
        const std::size_t x = *cell.variable_of(i);
        const std::size_t y = *cell.variable_of(j);
        rows.add(label("D1", i, j), {{x, -1}, {y, -1}}, delta(ei.a, ej.a), pair);
        rows.add(label("D2", i, j), {{x, -1}, {y, 1}}, delta(ei.a, ej.b) + ej.length, pair);
        rows.add(label("D3", i, j), {{x, 1}, {y, -1}}, delta(ei.b, ej.a) + ei.length, pair);
        rows.add(label("D4", i, j), {{x, 1}, {y, 1}}, delta(ei.b, ej.b) + ei.length + ej.length, pair);
        continue;
      }
      const std::size_t fixed = pi.on_edge() ? j : i;
      const std::size_t free = fixed == i ? j : i;
      const std::size_t v = cell[fixed].index;
      const Edge& e = g.edge(cell[free].index);
      const std::size_t t = *cell.variable_of(free);
      rows.add(label("N1", fixed, free), {{t, -1}}, delta(v, e.a), pair);
      rows.add(label("N2", fixed, free), {{t, 1}}, delta(v, e.b) + e.length, pair);
    }
  }
  return ParametricPolytope(dim, pair_count(n), rows.take());
}

// ---------------------------------------------------------------------------
// Faces and substitution

namespace {

struct VarPosition {
  bool fixed = false;
  Rational value;            // when fixed
  std::size_t variable = 0;  // d's variable otherwise
};

/// Where each variable of c lands on its face d; nullopt if d is not a face of c.
std::optional<std::vector<VarPosition>> face_positions(const CellDescriptor& d, const CellDescriptor& c,
                                                       const MetricGraph& g) {
  if (d.points() != c.points()) return std::nullopt;
  // Position order along an edge: 0 = at a, 1 + block, and a large sentinel at b.
  constexpr std::size_t kAtB = static_cast<std::size_t>(-1);
  std::vector<std::optional<std::size_t>> order(c.dimension());
  std::vector<VarPosition> out(c.dimension());
  for (std::size_t i = 0; i < c.points(); ++i) {
    const Placement& pc = c[i];
    const Placement& pd = d[i];
    if (!pc.on_edge()) {
      if (pd != pc) return std::nullopt;
      continue;
    }
    const Edge& e = g.edge(pc.index);
    VarPosition pos;
    std::size_t rank = 0;
    if (pd.on_edge()) {
      if (pd.index != pc.index) return std::nullopt;
      pos.variable = *d.variable_of(i);
      rank = 1 + pd.block;
    } else if (pd.index == e.a) {
      pos.fixed = true;
      pos.value = 0;
      rank = 0;
    } else if (pd.index == e.b) {
      pos.fixed = true;
      pos.value = e.length;
      rank = kAtB;
    } else {
      return std::nullopt;
    }
    const std::size_t var = *c.variable_of(i);
    if (order[var]) {
      if (*order[var] != rank) return std::nullopt;
    } else {
      order[var] = rank;
      out[var] = pos;
    }
  }
  // Monotone along each edge.
  for (std::size_t u = 0; u < c.dimension(); ++u) {
    for (std::size_t v = 0; v < c.dimension(); ++v) {
      const Placement& pu = c[c.variables()[u].front()];
      const Placement& pv = c[c.variables()[v].front()];
      if (pu.index == pv.index && pu.block < pv.block && *order[u] > *order[v]) return std::nullopt;
    }
  }
  return out;
}

RowContent substitute(const ConstraintRow& row, const std::vector<VarPosition>& positions, std::size_t d_dim) {
  RowContent out{std::vector<int>(d_dim, 0), row.rhs};
  for (std::size_t v = 0; v < positions.size(); ++v) {
    const int a = row.lhs[v];
    if (a == 0) continue;
    if (positions[v].fixed) {
      out.rhs.constant -= a * positions[v].value;
    } else {
      out.lhs[positions[v].variable] += a;
    }
  }
  return out;
}

bool zero_lhs(const RowContent& row) {
  return std::all_of(row.lhs.begin(), row.lhs.end(), [](int a) { return a == 0; });
}

/// 0 <= b(r) holding with equality for every r: one of the equations cutting out the face.
bool identically_tight(const RowContent& row) {
  return zero_lhs(row) && row.rhs.constant == 0 && !row.rhs.depends_on_restraint();
}

/// 0 <= b(r) with b > 0 on the whole orthant.
bool always_slack(const RowContent& row) {
  return zero_lhs(row) && row.rhs.constant > 0 && !row.rhs.depends_on_restraint();
}

/// Surviving substituted contents, each with the smallest source row.
std::map<RowContent, std::size_t> reduce_substituted(const ParametricPolytope& parent,
                                                     const std::vector<VarPosition>& positions, std::size_t d_dim) {
  std::map<RowContent, std::size_t> kept;
  for (std::size_t l = 0; l < parent.size(); ++l) {
    RowContent content = substitute(parent.row(l), positions, d_dim);
    if (identically_tight(content) || always_slack(content)) continue;
    kept.try_emplace(std::move(content), l);
  }
  // Rows whose rhs carries r are dropped when another row with the same lhs
  // is at least as tight everywhere on the orthant. Cell-defining rows stay.
  for (auto it = kept.begin(); it != kept.end();) {
    bool dominated = false;
    if (it->first.rhs.depends_on_restraint()) {
      for (const auto& [other, src] : kept) {
        if (&other == &it->first || other.lhs != it->first.lhs) continue;
        if (other.rhs.dominates(it->first.rhs)) {
          dominated = true;
          break;
        }
      }
    }
    it = dominated ? kept.erase(it) : std::next(it);
  }
  return kept;
}

std::map<RowContent, std::size_t> content_index(const ParametricPolytope& p) {
  std::map<RowContent, std::size_t> out;
  for (std::size_t l = 0; l < p.size(); ++l) {
    if (!out.try_emplace(RowContent{p.row(l).lhs, p.row(l).rhs}, l).second) {
      throw InternalError("duplicate row content in system of a cell");
    }
  }
  return out;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

/// The face of c cut out by the cell-defining rows in sigma.
CellDescriptor face_from_tight_rows(const CellDescriptor& c, const ParametricPolytope& system, const LabelSet& sigma,
                                    const MetricGraph& g) {
  const std::size_t dim = c.dimension();
  // Union-find over variables plus two sentinels (at a, at b) per variable's edge.
  std::map<std::size_t, std::vector<std::size_t>> by_edge;  // edge -> variables ordered by block
  for (std::size_t v = 0; v < dim; ++v) by_edge[c[c.variables()[v].front()].index].push_back(v);
  for (auto& [edge, vs] : by_edge) {
    std::sort(vs.begin(), vs.end(), [&](std::size_t u, std::size_t w) {
      return c[c.variables()[u].front()].block < c[c.variables()[w].front()].block;
    });
  }
  // Sentinels are per edge; offset them by edge order.
  std::map<std::size_t, std::size_t> sentinel_base;
  std::size_t next = dim;
  for (const auto& [edge, vs] : by_edge) {
    sentinel_base[edge] = next;
    next += 2;
  }
  std::vector<std::size_t> parent(next);
  std::iota(parent.begin(), parent.end(), 0);
  auto unite = [&](std::size_t x, std::size_t y) { parent[find_root(parent, x)] = find_root(parent, y); };
  auto edge_of = [&](std::size_t v) { return c[c.variables()[v].front()].index; };

  for (auto l : sigma.indices()) {
    if (!system.cell_defining(l)) continue;
    const auto& lhs = system.row(l).lhs;
    std::vector<std::pair<std::size_t, int>> nz;
    for (std::size_t v = 0; v < dim; ++v) {
      if (lhs[v] != 0) nz.emplace_back(v, lhs[v]);
    }
    if (nz.size() == 1) {
      const auto [v, a] = nz.front();
      unite(v, sentinel_base[edge_of(v)] + (a < 0 ? 0 : 1));
    } else if (nz.size() == 2) {
      unite(nz[0].first, nz[1].first);
    } else {
      throw InternalError("unexpected cell-defining row " + system.row(l).label);
    }
  }

  // Close under the order: anything between two equal blocks is equal, and
  // blocks below one at `a` (above one at `b`) are there too.
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [edge, vs] : by_edge) {
      const std::size_t sa = sentinel_base[edge];
      const std::size_t sb = sa + 1;
      for (std::size_t x = 0; x < vs.size(); ++x) {
        for (std::size_t y = x + 1; y < vs.size(); ++y) {
          bool tie = find_root(parent, vs[x]) == find_root(parent, vs[y]);
          bool low = find_root(parent, vs[y]) == find_root(parent, sa);
          bool high = find_root(parent, vs[x]) == find_root(parent, sb);
          if (low && find_root(parent, vs[x]) != find_root(parent, sa)) {
            unite(vs[x], sa);
            changed = true;
          }
          if (high && find_root(parent, vs[y]) != find_root(parent, sb)) {
            unite(vs[y], sb);
            changed = true;
          }
          if (tie) {
            for (std::size_t z = x + 1; z < y; ++z) {
              if (find_root(parent, vs[z]) != find_root(parent, vs[x])) {
                unite(vs[z], vs[x]);
                changed = true;
              }
            }
          }
        }
      }
      if (find_root(parent, sa) == find_root(parent, sb)) {
        throw InputError("incoherent tight set: a coordinate would sit at both ends of edge " + std::to_string(edge));
      }
    }
  }

  std::vector<Placement> placements = c.placements();
  for (const auto& [edge, vs] : by_edge) {
    const Edge& e = g.edge(edge);
    const std::size_t sa = sentinel_base[edge];
    const std::size_t sb = sa + 1;
    std::vector<std::size_t> classes;  // roots of middle classes in block order
    for (auto v : vs) {
      const std::size_t root = find_root(parent, v);
      std::optional<Placement> place;
      if (root == find_root(parent, sa)) {
        place = Placement::at_node(e.a);
      } else if (root == find_root(parent, sb)) {
        place = Placement::at_node(e.b);
      } else {
        auto it = std::find(classes.begin(), classes.end(), root);
        if (it == classes.end()) {
          classes.push_back(root);
          it = std::prev(classes.end());
        }
        place = Placement::on_edge(edge, static_cast<std::size_t>(it - classes.begin()));
      }
      for (auto coord : c.variables()[v]) placements[coord] = *place;
    }
  }
  return CellDescriptor(std::move(placements));
}

}  // namespace

bool is_face_of(const CellDescriptor& d, const CellDescriptor& c, const MetricGraph& g) {
  return face_positions(d, c, g).has_value();
}

std::vector<RowContent> substituted_rows(const CellDescriptor& d, const CellDescriptor& c, const MetricGraph& g,
                                         const DistanceMatrix& delta) {
  auto positions = face_positions(d, c, g);
  if (!positions) throw InputError(d.to_string() + " is not a face of " + c.to_string());
  const ParametricPolytope parent = inequality_system(c, g, delta);
  std::vector<RowContent> out;
  for (auto& [content, src] : reduce_substituted(parent, *positions, d.dimension())) out.push_back(content);
  return out;
}

std::vector<std::size_t> face_label_map(const CellDescriptor& d, const CellDescriptor& c, const MetricGraph& g,
                                        const DistanceMatrix& delta) {
  auto positions = face_positions(d, c, g);
  if (!positions) throw InputError(d.to_string() + " is not a face of " + c.to_string());
  const ParametricPolytope parent = inequality_system(c, g, delta);
  const ParametricPolytope child = inequality_system(d, g, delta);
  const auto reduced = reduce_substituted(parent, *positions, d.dimension());
  std::vector<std::size_t> out;
  out.reserve(child.size());
  for (const auto& row : child.rows()) {
    auto it = reduced.find(RowContent{row.lhs, row.rhs});
    if (it == reduced.end()) {
      throw InternalError("row " + row.label + " of " + d.to_string() + " has no preimage in " + c.to_string());
    }
    out.push_back(it->second);
  }
  return out;
}

CanonicalFace canonicalize_face(const CellDescriptor& c, const LabelSet& sigma, const MetricGraph& g,
                                const DistanceMatrix& delta) {
  const ParametricPolytope system = inequality_system(c, g, delta);
  CellDescriptor d = face_from_tight_rows(c, system, sigma, g);
  if (d.dimension() == 0) return {std::move(d), {}};
  const auto positions = *face_positions(d, c, g);
  const auto index = content_index(inequality_system(d, g, delta));
  LabelSet rho;
  for (auto l : sigma.indices()) {
    if (system.cell_defining(l)) continue;
    auto it = index.find(substitute(system.row(l), positions, d.dimension()));
    if (it != index.end()) rho.insert(it->second);
  }
  return {std::move(d), rho};
}

// ---------------------------------------------------------------------------
// CellAtlas

struct CellAtlas::Entry {
  std::optional<ParametricPolytope> system;
  std::unique_ptr<VertexEnumerator> enumerator;
  std::map<RowContent, std::size_t> contents;
};

CellAtlas::CellAtlas(MetricGraph g, std::size_t points)
    : graph_(std::move(g)), delta_(node_distances(graph_)), points_(points), cells_(all_cells(graph_, points)) {
  entries_.reserve(cells_.size());
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    index_.emplace(cells_[i], i);
    auto entry = std::make_unique<Entry>();
    if (cells_[i].dimension() > 0) {
      entry->system.emplace(inequality_system(cells_[i], graph_, delta_));
      entry->enumerator = std::make_unique<VertexEnumerator>(*entry->system);
      entry->contents = content_index(*entry->system);
    }
    entries_.push_back(std::move(entry));
  }
}

CellAtlas::~CellAtlas() = default;

std::size_t CellAtlas::index_of(const CellDescriptor& cell) const {
  auto it = index_.find(cell);
  if (it == index_.end()) throw InternalError("cell " + cell.to_string() + " is not in the atlas");
  return it->second;
}

const ParametricPolytope* CellAtlas::system(std::size_t i) const {
  const auto& s = entries_.at(i)->system;
  return s ? &*s : nullptr;
}

const VertexEnumerator* CellAtlas::enumerator(std::size_t i) const { return entries_.at(i)->enumerator.get(); }

bool CellAtlas::node_configuration_admissible(std::size_t i, const RestraintVector& r) const {
  const auto& cell = cells_.at(i);
  for (std::size_t a = 0; a < points_; ++a) {
    for (std::size_t b = a + 1; b < points_; ++b) {
      if (delta_(cell[a].index, cell[b].index) < r.at(a, b)) return false;
    }
  }
  return true;
}

CanonicalFace CellAtlas::canonicalize(std::size_t cell, const LabelSet& sigma) const {
  const auto& c = cells_.at(cell);
  const auto& system = *entries_.at(cell)->system;
  CellDescriptor d = face_from_tight_rows(c, system, sigma, graph_);
  if (d.dimension() == 0) return {std::move(d), {}};
  if (d == c) {
    LabelSet rho;
    for (auto l : sigma.indices()) {
      if (!system.cell_defining(l)) rho.insert(l);
    }
    return {std::move(d), rho};
  }
  const auto positions = *face_positions(d, c, graph_);
  const auto& index = entries_.at(index_of(d))->contents;
  LabelSet rho;
  for (auto l : sigma.indices()) {
    if (system.cell_defining(l)) continue;
    auto it = index.find(substitute(system.row(l), positions, d.dimension()));
    if (it != index.end()) rho.insert(it->second);
  }
  return {std::move(d), rho};
}

}  // namespace graphconfig
