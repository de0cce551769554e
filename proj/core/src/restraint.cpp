#include "graphconfig/restraint.hpp"

#include <sstream>
#include <utility>

#include "graphconfig/errors.hpp"

namespace graphconfig {

std::size_t pair_index(std::size_t points, std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  if (i == j || j >= points) throw std::out_of_range("bad coordinate pair");
  // Pairs with first index < i, then the offset within row i.
  return i * points - i * (i + 1) / 2 + (j - i - 1);
}

RestraintVector::RestraintVector(std::size_t points, const Rational& value)
    : RestraintVector(points, std::vector<Rational>(pair_count(points), value)) {}

RestraintVector::RestraintVector(std::size_t points, std::vector<Rational> values)
    : points_(points), values_(std::move(values)) {
  if (values_.size() != pair_count(points_)) {
    throw InputError("restraint vector needs " + std::to_string(pair_count(points_)) + " components, got " +
                     std::to_string(values_.size()));
  }
  for (const auto& v : values_) {
    if (v < 0) throw InputError("restraint components must be nonnegative");
  }
}

Ray Ray::scalar(std::size_t points) {
  return Ray(RestraintVector(points, Rational(0)), std::vector<Rational>(pair_count(points), Rational(1)));
}

Ray::Ray(RestraintVector base, std::vector<Rational> direction)
    : base_(std::move(base)), direction_(std::move(direction)) {
  if (direction_.size() != base_.size()) throw InputError("ray direction has the wrong number of components");
  bool nonzero = false;
  for (const auto& d : direction_) {
    if (d < 0) throw InputError("ray direction must be componentwise nonnegative");
    nonzero = nonzero || d != 0;
  }
  if (!nonzero) throw InputError("ray direction must be nonzero");
}

RestraintVector Ray::at(const Rational& t) const {
  std::vector<Rational> values(base_.size());
  for (std::size_t p = 0; p < values.size(); ++p) values[p] = base_[p] + t * direction_[p];
  return RestraintVector(base_.points(), std::move(values));
}

namespace {

std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(parse_rational(item));
    } catch (const std::invalid_argument& err) {
      throw InputError(err.what());
    }
  }
  if (out.empty()) throw InputError("empty rational list");
  return out;
}

std::vector<Rational> expand(std::size_t points, std::vector<Rational> values) {
  if (values.size() == 1 && pair_count(points) != 1) return std::vector<Rational>(pair_count(points), values.front());
  return values;
}

}  // namespace

RestraintVector parse_restraint(std::size_t points, const std::string& text) {
  return RestraintVector(points, expand(points, parse_list(text)));
}

Ray parse_ray(std::size_t points, const std::string& text) {
  const auto semi = text.find(';');
  if (semi == std::string::npos) throw InputError("ray must be written 'base;direction'");
  return Ray(parse_restraint(points, text.substr(0, semi)), expand(points, parse_list(text.substr(semi + 1))));
}

}  // namespace graphconfig
