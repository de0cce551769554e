#pragma once

#include <cstddef>
#include <vector>

#include "graphconfig/metric_graph.hpp"
#include "graphconfig/polytope.hpp"

namespace graphconfig {

/**
 * Invariants of the discretized configuration space: n-tuples of grid
 * points (spacing `mesh` along every edge) satisfying the restraint,
 * joined when they differ by one grid step in one coordinate. Squares
 * (two coordinates stepping independently, all four corners admissible)
 * are filled in, so `cycle_rank` is the first mod-2 Betti number of the
 * resulting cubical complex; `graph_cycle_rank` is edges − vertices +
 * components of the bare graph.
 */
struct DiscreteInvariants {
  std::size_t grid_points = 0;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t squares = 0;
  std::size_t components = 0;
  long graph_cycle_rank = 0;
  long cycle_rank = 0;
};

/// Throws InputError when mesh is not positive or does not divide every edge length.
DiscreteInvariants discrete_invariants(const MetricGraph& g, std::size_t n, const RestraintVector& r,
                                       const Rational& mesh);

/// 1 / (2 · lcm of the denominators of the edge lengths, r and `extra`).
Rational auto_mesh(const MetricGraph& g, const RestraintVector& r, const std::vector<Rational>& extra = {});

/**
 * Face poset of {x : A x <= b(r)} by exhaustion: the vertices are found by
 * solving every square subsystem, and every subset S of rows is tested for
 * the face it cuts out. Faces carry their full tight sets and their affine
 * dimensions. Limited to 14 rows and dimension 3 (InputError beyond).
 */
FacePoset bruteforce_face_poset(const ParametricPolytope& p, const RestraintVector& r);

}  // namespace graphconfig
