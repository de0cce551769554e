#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "graphconfig/label_set.hpp"
#include "graphconfig/rational.hpp"
#include "graphconfig/restraint.hpp"

namespace graphconfig {

/// Right-hand side b(r) = constant + sum_p coeffs[p] * r_p, coeffs in {-1, 0}.
struct AffineRhs {
  Rational constant;
  std::vector<int> coeffs;

  Rational operator()(const RestraintVector& r) const;
  /// Value along a ray as (value at t = 0, slope in t).
  std::pair<Rational, Rational> along(const Ray& ray) const;

  bool depends_on_restraint() const;
  /// True when *this <= other at every point of the nonnegative orthant,
  /// i.e. coefficientwise.
  bool dominates(const AffineRhs& other) const;

  friend bool operator==(const AffineRhs&, const AffineRhs&) = default;
  friend std::weak_ordering operator<=>(const AffineRhs&, const AffineRhs&) = default;
};

/// One inequality `lhs . x <= rhs(r)`.
struct ConstraintRow {
  std::string label;
  std::vector<int> lhs;
  AffineRhs rhs;
};

/**
 * A parametric polytope {x : A x <= b(r)}.
 *
 * Rows have entries in {-1, 0, 1} with at most two nonzeros. Every
 * coordinate must carry both a +x_i and a -x_i row so that the polytope is
 * bounded for every parameter value; systems without such a box are
 * rejected. Zero rows are allowed and act as pure parameter conditions.
 */
class ParametricPolytope {
 public:
  ParametricPolytope(std::size_t dimension, std::size_t restraint_size, std::vector<ConstraintRow> rows);

  std::size_t dimension() const { return dimension_; }
  std::size_t restraint_size() const { return restraint_size_; }
  std::size_t size() const { return rows_.size(); }
  const std::vector<ConstraintRow>& rows() const { return rows_; }
  const ConstraintRow& row(std::size_t i) const { return rows_[i]; }
  std::optional<std::size_t> find(std::string_view label) const;
  /// Looks up a label; throws std::out_of_range when absent.
  std::size_t index_of(std::string_view label) const;
  LabelSet labels(std::initializer_list<std::string_view> names) const;

  /// Rows whose right-hand side is independent of r; these cut out the
  /// underlying cell rather than the restraint.
  bool cell_defining(std::size_t i) const { return !rows_[i].rhs.depends_on_restraint(); }

 private:
  std::size_t dimension_;
  std::size_t restraint_size_;
  std::vector<ConstraintRow> rows_;
};

/// A basic subset together with the inverse of its (square) row block.
struct Basis {
  std::vector<std::size_t> rows;
  std::vector<Rational> inverse;  // dimension x dimension, row-major
  LabelSet members;
};

/// The set of abstract vertices of a polytope; empty for the empty polytope.
struct PolytopeType {
  std::vector<LabelSet> vertices;  // sorted, unique

  bool empty() const { return vertices.empty(); }
  friend bool operator==(const PolytopeType&, const PolytopeType&) = default;
  friend auto operator<=>(const PolytopeType&, const PolytopeType&) = default;
};

struct Face {
  LabelSet labels;
  int dimension = 0;

  friend bool operator==(const Face&, const Face&) = default;
};

/// Faces indexed by their tight label sets, ordered by reverse inclusion.
struct FacePoset {
  std::vector<Face> faces;  // sorted by (dimension, labels)

  std::vector<std::size_t> f_vector() const;
  /// Whether face i is contained in face j.
  bool below(std::size_t i, std::size_t j) const { return faces[j].labels.is_subset_of(faces[i].labels); }
  friend bool operator==(const FacePoset&, const FacePoset&) = default;
};

/// Exact rank of the rows of `p` indexed by `labels`.
std::size_t row_rank(const ParametricPolytope& p, const LabelSet& labels);

/**
 * Precomputed basic subsets of a system. Evaluating the type at many
 * parameter values reuses the inverses.
 */
class VertexEnumerator {
 public:
  explicit VertexEnumerator(const ParametricPolytope& p);

  const ParametricPolytope& polytope() const { return *polytope_; }
  const std::vector<Basis>& bases() const { return bases_; }
  std::optional<std::size_t> find_basis(const std::vector<std::size_t>& rows) const;

  std::vector<Rational> vertex(const Basis& basis, const RestraintVector& r) const;
  bool feasible(const std::vector<Rational>& x, const RestraintVector& r) const;
  LabelSet tight_set(const std::vector<Rational>& x, const RestraintVector& r) const;
  PolytopeType type_at(const RestraintVector& r) const;

 private:
  const ParametricPolytope* polytope_;
  std::vector<Basis> bases_;
};

/**
 * A system restricted to a ray. For every basis and row the slack
 * b_l(t) - A_l x_beta(t) is affine in t, so types along the ray reduce to
 * sign tests and critical parameters to roots of these affine functions.
 */
class RayPolytope {
 public:
  RayPolytope(const VertexEnumerator& enumerator, const Ray& ray);

  struct Slack {
    Rational at_zero;
    Rational slope;
  };

  PolytopeType type_at(const Rational& t) const;
  /// Positive roots t of slack(beta, lambda) for lambda outside beta.
  struct Root {
    Rational t;
    std::size_t basis;
    std::size_t row;
  };
  std::vector<Root> roots() const;
  const VertexEnumerator& enumerator() const { return *enumerator_; }

 private:
  const VertexEnumerator* enumerator_;
  std::vector<std::vector<Slack>> slacks_;  // [basis][row]
};

/// All size-dimension subsets with invertible row block, in lexicographic order.
std::vector<std::vector<std::size_t>> basic_subsets(const ParametricPolytope& p);

/// Solution of A_beta x = b_beta(r); throws InputError if beta is not basic.
std::vector<Rational> potential_vertex(const ParametricPolytope& p, const std::vector<std::size_t>& beta,
                                       const RestraintVector& r);

/// Every label tight at the potential vertex of beta.
LabelSet abstract_vertex(const ParametricPolytope& p, const std::vector<std::size_t>& beta, const RestraintVector& r);

PolytopeType polytope_type(const ParametricPolytope& p, const RestraintVector& r);

/// Intersection semilattice of the abstract vertices, graded by
/// dimension - rank of the indexed rows. Throws InputError on an empty type.
FacePoset face_poset(const ParametricPolytope& p, const PolytopeType& type);

bool types_equal(const PolytopeType& a, const PolytopeType& b);

/// Canonical sorted array of sorted label-name arrays.
nlohmann::json type_to_json(const ParametricPolytope& p, const PolytopeType& type);

}  // namespace graphconfig
