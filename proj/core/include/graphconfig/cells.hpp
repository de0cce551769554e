#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "graphconfig/metric_graph.hpp"
#include "graphconfig/polytope.hpp"

namespace graphconfig {

/// Where one coordinate of a cell of Γⁿ lives.
struct Placement {
  enum class Kind { node, edge };
  Kind kind = Kind::node;
  std::size_t index = 0;  // node or edge index
  std::size_t block = 0;  // rank of the coordinate's block along the edge (0 nearest `a`)

  static Placement at_node(std::size_t v) { return {Kind::node, v, 0}; }
  static Placement on_edge(std::size_t e, std::size_t block = 0) { return {Kind::edge, e, block}; }
  bool on_edge() const { return kind == Kind::edge; }

  friend auto operator<=>(const Placement&, const Placement&) = default;
  friend bool operator==(const Placement&, const Placement&) = default;
};

/**
 * A cell of the product cell structure on Γⁿ, subdivided into products of
 * simplices. Coordinates sharing an edge are arranged in blocks: coordinates
 * in one block coincide, and blocks are strictly ordered along the edge.
 * Each block is one free variable, so the dimension is the number of blocks.
 */
class CellDescriptor {
 public:
  CellDescriptor() = default;
  /// Throws InputError unless every edge's block ranks are 0..m-1.
  explicit CellDescriptor(std::vector<Placement> coords);

  std::size_t points() const { return coords_.size(); }
  const Placement& operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<Placement>& placements() const { return coords_; }
  std::size_t dimension() const { return variables_.size(); }

  /// Coordinates of each free variable; variables ordered by smallest coordinate.
  const std::vector<std::vector<std::size_t>>& variables() const { return variables_; }
  /// Variable of an edge-placed coordinate.
  std::optional<std::size_t> variable_of(std::size_t coord) const;

  /// `n2, e0, e3#0, e3#1`: node, lone edge coordinate, blocks on a shared edge.
  std::string to_string() const;

  friend auto operator<=>(const CellDescriptor& a, const CellDescriptor& b) { return a.coords_ <=> b.coords_; }
  friend bool operator==(const CellDescriptor& a, const CellDescriptor& b) { return a.coords_ == b.coords_; }

 private:
  std::vector<Placement> coords_;
  std::vector<std::vector<std::size_t>> variables_;
  std::vector<std::optional<std::size_t>> variable_of_;
};

/// n-dimensional cells: every coordinate on an edge, shared edges totally ordered.
std::vector<CellDescriptor> maximal_cells(const MetricGraph& g, std::size_t n);

/// Every cell of Γⁿ of every dimension, sorted.
std::vector<CellDescriptor> all_cells(const MetricGraph& g, std::size_t n);

/**
 * The inequality system of a positive-dimensional cell over its free
 * variables, generated from the cell's own descriptor:
 *   C1/C2 box rows per variable; E1 between blocks of a shared edge and
 *   E2/E3 per coordinate pair across those blocks; D1..D4 for free
 *   coordinates on distinct edges; N1/N2 for a node coordinate against a
 *   free one; Z (zero row) for two node coordinates or a shared block.
 * Throws InputError for zero-dimensional cells.
 */
ParametricPolytope inequality_system(const CellDescriptor& cell, const MetricGraph& g, const DistanceMatrix& delta);

bool is_face_of(const CellDescriptor& d, const CellDescriptor& c, const MetricGraph& g);

/**
 * For each row of d's system, the smallest-index row of c's system whose
 * substitution onto d produces it. Throws InputError if d is not a face
 * of c, InternalError if a row of d has no preimage.
 */
std::vector<std::size_t> face_label_map(const CellDescriptor& d, const CellDescriptor& c, const MetricGraph& g,
                                        const DistanceMatrix& delta);

/// Rows of c's system substituted onto the face d, deduplicated, with
/// always-true and dominated rows removed. Sorted by content.
struct RowContent {
  std::vector<int> lhs;
  AffineRhs rhs;
  friend std::weak_ordering operator<=>(const RowContent&, const RowContent&) = default;
  friend bool operator==(const RowContent&, const RowContent&) = default;
};
std::vector<RowContent> substituted_rows(const CellDescriptor& d, const CellDescriptor& c, const MetricGraph& g,
                                         const DistanceMatrix& delta);

/// Canonical identity of a face: the smallest cell containing it and its
/// tight rows in that cell's system (empty for zero-dimensional cells).
struct CanonicalFace {
  CellDescriptor cell;
  LabelSet rows;
  friend auto operator<=>(const CanonicalFace&, const CanonicalFace&) = default;
  friend bool operator==(const CanonicalFace&, const CanonicalFace&) = default;
};

/// Moves a face of c_r, given by its tight set sigma in c's system, to the
/// smallest cell containing it. Throws InputError for incoherent sigma.
CanonicalFace canonicalize_face(const CellDescriptor& c, const LabelSet& sigma, const MetricGraph& g,
                                const DistanceMatrix& delta);

/**
 * All cells of Γⁿ with their systems and basis data, built once and shared
 * read-only between workers.
 */
class CellAtlas {
 public:
  CellAtlas(MetricGraph g, std::size_t points);
  ~CellAtlas();
  CellAtlas(const CellAtlas&) = delete;
  CellAtlas& operator=(const CellAtlas&) = delete;

  const MetricGraph& graph() const { return graph_; }
  const DistanceMatrix& distances() const { return delta_; }
  std::size_t points() const { return points_; }
  std::size_t restraint_size() const { return pair_count(points_); }

  std::size_t size() const { return cells_.size(); }
  const CellDescriptor& cell(std::size_t i) const { return cells_[i]; }
  std::size_t index_of(const CellDescriptor& cell) const;

  /// Null for zero-dimensional cells.
  const ParametricPolytope* system(std::size_t i) const;
  const VertexEnumerator* enumerator(std::size_t i) const;

  /// Whether a zero-dimensional cell's node configuration satisfies r.
  bool node_configuration_admissible(std::size_t i, const RestraintVector& r) const;

  CanonicalFace canonicalize(std::size_t cell, const LabelSet& sigma) const;

 private:
  struct Entry;
  MetricGraph graph_;
  DistanceMatrix delta_;
  std::size_t points_;
  std::vector<CellDescriptor> cells_;
  std::map<CellDescriptor, std::size_t> index_;
  std::vector<std::unique_ptr<Entry>> entries_;
};

}  // namespace graphconfig
