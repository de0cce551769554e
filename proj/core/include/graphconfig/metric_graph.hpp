#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "graphconfig/rational.hpp"

namespace graphconfig {

/// An edge of a metric graph, isometric to [0, length] with `a` at 0 and `b` at length.
struct Edge {
  std::size_t a = 0;
  std::size_t b = 0;
  Rational length;
};

/**
 * A finite connected metric graph without loops.
 *
 * Loops handed to the constructor are split at their midpoints into two
 * edges through a fresh node named `<node>~<k>`. Parallel edges are kept.
 * Immutable after construction.
 */
class MetricGraph {
 public:
  struct EdgeSpec {
    std::string a;
    std::string b;
    Rational length;
  };

  /// Validates and normalizes; throws InputError on empty, disconnected,
  /// or non-positive-length input.
  explicit MetricGraph(const std::vector<EdgeSpec>& edges);

  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }

  /// Index of a node by name; throws InputError if absent.
  std::size_t node_index(std::string_view name) const;

  Rational shortest_edge_length() const;

 private:
  std::vector<std::string> nodes_;
  std::vector<Edge> edges_;
};

/// Exact all-pairs shortest path distances between nodes.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t size) : size_(size), values_(size * size) {}

  std::size_t size() const { return size_; }
  const Rational& operator()(std::size_t u, std::size_t v) const { return values_[u * size_ + v]; }
  Rational& operator()(std::size_t u, std::size_t v) { return values_[u * size_ + v]; }

 private:
  std::size_t size_ = 0;
  std::vector<Rational> values_;
};

/// Graph file: `#` comments, one `<node-a> <node-b> <length>` edge per line.
MetricGraph parse_graph(std::string_view text);

/// Inverse of parse_graph (subdivided loops appear as their two halves).
std::string serialize_graph(const MetricGraph& graph);

/// Floyd–Warshall over nodes, parallel edges reduced to their minimum first.
DistanceMatrix node_distances(const MetricGraph& graph);

/// Star with k edges of lengths 1 + 1/2^i, i = 1..k. Throws InputError for k = 0.
MetricGraph corolla(int k);

/// A point of the graph: a node, or a point at `offset` (measured from the
/// edge's `a` end) on an edge.
struct GraphPoint {
  bool on_edge = false;
  std::size_t index = 0;
  Rational offset;

  static GraphPoint at_node(std::size_t node) { return {false, node, Rational(0)}; }
  static GraphPoint on(std::size_t edge, Rational offset) { return {true, edge, std::move(offset)}; }
};

/// Path distance between two arbitrary points, computed from node distances
/// and in-edge segments (minimum over the endpoint routings).
Rational point_distance(const MetricGraph& graph, const DistanceMatrix& delta, const GraphPoint& p,
                        const GraphPoint& q);

}  // namespace graphconfig
