#include "graphconfig/complex.hpp"

#include <algorithm>
#include <numeric>

#include "graphconfig/errors.hpp"
#include "parallel.hpp"

namespace graphconfig {

namespace {

std::string key_name(const CellAtlas& atlas, const CanonicalFace& key) {
  std::string out = "(" + key.cell.to_string() + "){";
  if (key.cell.dimension() > 0) {
    const ParametricPolytope& system = *atlas.system(atlas.index_of(key.cell));
    bool first = true;
    for (auto l : key.rows.indices()) {
      if (!first) out += ",";
      out += system.row(l).label;
      first = false;
    }
  }
  return out + "}";
}

struct ProtoCell {
  CanonicalFace key;
  std::string name;
  int dimension = 0;
  std::vector<CanonicalFace> faces;
};

std::vector<ProtoCell> cells_of(const CellAtlas& atlas, std::size_t i, const PolytopeType& type) {
  std::vector<ProtoCell> out;
  if (type.empty()) return out;
  const CellDescriptor& cell = atlas.cell(i);
  if (cell.dimension() == 0) {
    CanonicalFace key{cell, {}};
    out.push_back({key, key_name(atlas, key), 0, {}});
    return out;
  }
  const ParametricPolytope& system = *atlas.system(i);
  const FacePoset poset = face_poset(system, type);
  for (std::size_t f = 0; f < poset.faces.size(); ++f) {
    const Face& face = poset.faces[f];
    const auto labels = face.labels.indices();
    if (std::any_of(labels.begin(), labels.end(), [&](std::size_t l) { return system.cell_defining(l); })) continue;
    ProtoCell proto;
    proto.key = CanonicalFace{cell, face.labels};
    proto.name = key_name(atlas, proto.key);
    proto.dimension = face.dimension;
    for (std::size_t g = 0; g < poset.faces.size(); ++g) {
      if (poset.faces[g].dimension + 1 != face.dimension || !poset.below(g, f)) continue;
      proto.faces.push_back(atlas.canonicalize(i, poset.faces[g].labels));
    }
    std::sort(proto.faces.begin(), proto.faces.end());
    if (std::adjacent_find(proto.faces.begin(), proto.faces.end()) != proto.faces.end()) {
      throw InternalError("cell " + proto.name + " is not regular: repeated boundary face");
    }
    out.push_back(std::move(proto));
  }
  return out;
}

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

/// Rank over GF(2) of a matrix given as sparse sorted columns.
std::size_t rank_mod2(std::vector<std::vector<std::size_t>> columns) {
  std::map<std::size_t, std::size_t> pivot_owner;  // largest row -> column owning it
  std::size_t rank = 0;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    auto& col = columns[c];
    while (!col.empty()) {
      auto it = pivot_owner.find(col.back());
      if (it == pivot_owner.end()) break;
      const auto& other = columns[it->second];
      std::vector<std::size_t> sum;
      std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(), std::back_inserter(sum));
      col = std::move(sum);
    }
    if (!col.empty()) {
      pivot_owner.emplace(col.back(), c);
      ++rank;
    }
  }
  return rank;
}

}  // namespace

ConfigComplex::ConfigComplex(std::size_t points, std::vector<ComplexCell> cells)
    : points_(points), cells_(std::move(cells)) {
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    const auto& c = cells_[i];
    if (c.dimension < 0 || static_cast<std::size_t>(c.dimension) > points_) {
      throw InternalError("cell " + c.name + " has dimension out of range");
    }
    for (std::size_t k = 0; k < c.boundary.size(); ++k) {
      const std::size_t f = c.boundary[k];
      if (f >= cells_.size() || cells_[f].dimension + 1 != c.dimension) {
        throw InternalError("cell " + c.name + " lists an invalid boundary face");
      }
      if (k > 0 && c.boundary[k - 1] >= f) throw InternalError("cell " + c.name + " boundary is not strictly sorted");
    }
  }
}

std::vector<PolytopeType> atlas_types(const CellAtlas& atlas, const RestraintVector& r) {
  std::vector<PolytopeType> types(atlas.size());
  detail::parallel_for(atlas.size(), [&](std::size_t i) {
    if (atlas.cell(i).dimension() == 0) {
      if (atlas.node_configuration_admissible(i, r)) types[i].vertices.emplace_back();
    } else {
      types[i] = atlas.enumerator(i)->type_at(r);
    }
  });
  return types;
}

ConfigComplex assemble_complex(const CellAtlas& atlas, const std::vector<PolytopeType>& types) {
  if (types.size() != atlas.size()) throw InputError("one type per atlas cell is required");
  std::vector<std::vector<ProtoCell>> per_cell(atlas.size());
  detail::parallel_for(atlas.size(), [&](std::size_t i) { per_cell[i] = cells_of(atlas, i, types[i]); });

  std::vector<ProtoCell> protos;
  for (auto& batch : per_cell) {
    for (auto& p : batch) protos.push_back(std::move(p));
  }
  std::sort(protos.begin(), protos.end(), [](const ProtoCell& a, const ProtoCell& b) {
    return std::tie(a.dimension, a.name) < std::tie(b.dimension, b.name);
  });
  std::map<CanonicalFace, std::size_t> index;
  for (std::size_t i = 0; i < protos.size(); ++i) {
    if (!index.emplace(protos[i].key, i).second) throw InternalError("duplicate cell " + protos[i].name);
  }
  std::vector<ComplexCell> cells;
  cells.reserve(protos.size());
  for (auto& p : protos) {
    ComplexCell cell{std::move(p.key), std::move(p.name), p.dimension, {}};
    for (const auto& face : p.faces) {
      auto it = index.find(face);
      if (it == index.end()) {
        throw InternalError("boundary face (" + face.cell.to_string() + ") of " + cell.name + " is not a cell");
      }
      cell.boundary.push_back(it->second);
    }
    std::sort(cell.boundary.begin(), cell.boundary.end());
    cells.push_back(std::move(cell));
  }
  return ConfigComplex(atlas.points(), std::move(cells));
}

ConfigComplex build_complex(const CellAtlas& atlas, const RestraintVector& r) {
  if (r.points() != atlas.points()) throw InputError("restraint vector does not match the number of points");
  return assemble_complex(atlas, atlas_types(atlas, r));
}

ConfigComplex build_complex(const MetricGraph& g, std::size_t n, const RestraintVector& r) {
  const CellAtlas atlas(g, n);
  return build_complex(atlas, r);
}

std::vector<std::size_t> f_vector(const ConfigComplex& x) {
  std::vector<std::size_t> out(x.points() + 1, 0);
  for (const auto& c : x.cells()) ++out[static_cast<std::size_t>(c.dimension)];
  return out;
}

std::size_t components(const ConfigComplex& x) {
  DisjointSets sets(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (auto f : x.cell(i).boundary) sets.unite(i, f);
  }
  std::size_t count = 0;
  for (std::size_t i = 0; i < x.size(); ++i) count += sets.find(i) == i;
  return count;
}

long euler_characteristic(const ConfigComplex& x) {
  long chi = 0;
  for (const auto& c : x.cells()) chi += c.dimension % 2 == 0 ? 1 : -1;
  return chi;
}

std::vector<std::size_t> betti_mod2(const ConfigComplex& x) {
  if (x.empty()) return {};
  const std::size_t top = x.points();
  const auto f = f_vector(x);
  // Row indices local to each dimension.
  std::vector<std::size_t> local(x.size());
  std::vector<std::size_t> seen(top + 1, 0);
  for (std::size_t i = 0; i < x.size(); ++i) local[i] = seen[static_cast<std::size_t>(x.cell(i).dimension)]++;
  std::vector<std::size_t> rank(top + 2, 0);  // rank of the boundary map out of dimension k
  for (std::size_t k = 1; k <= top; ++k) {
    std::vector<std::vector<std::size_t>> columns;
    for (const auto& c : x.cells()) {
      if (static_cast<std::size_t>(c.dimension) != k) continue;
      std::vector<std::size_t> col;
      for (auto b : c.boundary) col.push_back(local[b]);
      std::sort(col.begin(), col.end());
      columns.push_back(std::move(col));
    }
    rank[k] = rank_mod2(std::move(columns));
  }
  std::vector<std::size_t> out(top + 1);
  for (std::size_t k = 0; k <= top; ++k) out[k] = f[k] - rank[k] - rank[k + 1];
  return out;
}

Invariants invariants(const ConfigComplex& x) {
  return {f_vector(x), components(x), euler_characteristic(x), betti_mod2(x)};
}

nlohmann::json complex_report(const ConfigComplex& x) {
  const Invariants inv = invariants(x);
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : x.cells()) cells.push_back(c.name);
  return {{"f_vector", inv.f_vector},
          {"components", inv.components},
          {"euler", inv.euler},
          {"betti_mod2", inv.betti_mod2},
          {"cells", std::move(cells)}};
}

}  // namespace graphconfig
