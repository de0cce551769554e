#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "graphconfig/cells.hpp"

namespace graphconfig {

/// One cell of Γⁿ_r: a face of some c_r identified by its canonical key.
struct ComplexCell {
  CanonicalFace key;
  std::string name;  // `(<cell>){<rows>}`, the ordering key
  int dimension = 0;
  std::vector<std::size_t> boundary;  // codimension-1 faces, sorted indices into the complex
};

/**
 * The regular CW complex of Γⁿ_r. Cells are sorted by (dimension, name);
 * the constructor checks regularity and closure under faces and throws
 * InternalError when either fails.
 */
class ConfigComplex {
 public:
  ConfigComplex() = default;
  ConfigComplex(std::size_t points, std::vector<ComplexCell> cells);

  std::size_t points() const { return points_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  const std::vector<ComplexCell>& cells() const { return cells_; }
  const ComplexCell& cell(std::size_t i) const { return cells_[i]; }

 private:
  std::size_t points_ = 0;
  std::vector<ComplexCell> cells_;
};

/// Type of every cell of the atlas at r. Zero-dimensional cells get the
/// single empty abstract vertex when their node configuration satisfies r.
std::vector<PolytopeType> atlas_types(const CellAtlas& atlas, const RestraintVector& r);

/// Assembles the complex from precomputed per-cell types.
ConfigComplex assemble_complex(const CellAtlas& atlas, const std::vector<PolytopeType>& types);

ConfigComplex build_complex(const CellAtlas& atlas, const RestraintVector& r);
ConfigComplex build_complex(const MetricGraph& g, std::size_t n, const RestraintVector& r);

/// Cell counts in dimensions 0..n.
std::vector<std::size_t> f_vector(const ConfigComplex& x);
std::size_t components(const ConfigComplex& x);
long euler_characteristic(const ConfigComplex& x);
/// Mod-2 Betti numbers b_0..b_n; empty for the empty complex.
std::vector<std::size_t> betti_mod2(const ConfigComplex& x);

/// Summary invariants shared by the complex and sweep reports.
struct Invariants {
  std::vector<std::size_t> f_vector;
  std::size_t components = 0;
  long euler = 0;
  std::vector<std::size_t> betti_mod2;

  bool empty() const { return components == 0; }
  friend bool operator==(const Invariants&, const Invariants&) = default;
};

Invariants invariants(const ConfigComplex& x);

/// {"f_vector", "components", "euler", "betti_mod2", "cells"}.
nlohmann::json complex_report(const ConfigComplex& x);

}  // namespace graphconfig
