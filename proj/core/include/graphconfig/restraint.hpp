#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "graphconfig/rational.hpp"

namespace graphconfig {

/// Number of unordered pairs {i, j} among `points` coordinates.
constexpr std::size_t pair_count(std::size_t points) { return points * (points - 1) / 2; }

/// Lexicographic index of the pair (i, j), 0-based, i != j.
std::size_t pair_index(std::size_t points, std::size_t i, std::size_t j);

/**
 * Pairwise minimum-distance thresholds r_ij, stored over the pairs
 * (1,2), (1,3), ..., (n-1,n) in lexicographic order. Components are
 * nonnegative.
 */
class RestraintVector {
 public:
  RestraintVector() = default;
  /// Every component set to `value`.
  RestraintVector(std::size_t points, const Rational& value);
  RestraintVector(std::size_t points, std::vector<Rational> values);

  std::size_t points() const { return points_; }
  std::size_t size() const { return values_.size(); }
  const Rational& operator[](std::size_t pair) const { return values_[pair]; }
  const Rational& at(std::size_t i, std::size_t j) const { return values_[pair_index(points_, i, j)]; }
  const std::vector<Rational>& values() const { return values_; }

  friend bool operator==(const RestraintVector&, const RestraintVector&) = default;

 private:
  std::size_t points_ = 0;
  std::vector<Rational> values_;
};

/// A ray base + t * direction in restraint space, direction componentwise >= 0 and nonzero.
class Ray {
 public:
  /// The scalar family r_ij = t.
  static Ray scalar(std::size_t points);

  Ray(RestraintVector base, std::vector<Rational> direction);

  const RestraintVector& base() const { return base_; }
  const std::vector<Rational>& direction() const { return direction_; }
  std::size_t points() const { return base_.points(); }

  RestraintVector at(const Rational& t) const;

 private:
  RestraintVector base_;
  std::vector<Rational> direction_;
};

/// `--r` syntax: a single rational (scalar) or a comma list over all pairs.
RestraintVector parse_restraint(std::size_t points, const std::string& text);

/// `--ray` syntax: `base;direction`, each side a `--r` style list.
Ray parse_ray(std::size_t points, const std::string& text);

}  // namespace graphconfig
