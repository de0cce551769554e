#include "graphconfig/polytope.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "graphconfig/errors.hpp"

namespace graphconfig {

Rational AffineRhs::operator()(const RestraintVector& r) const {
  Rational value = constant;
  for (std::size_t p = 0; p < coeffs.size(); ++p) {
    if (coeffs[p] != 0) value += coeffs[p] * r[p];
  }
  return value;
}

std::pair<Rational, Rational> AffineRhs::along(const Ray& ray) const {
  Rational at_zero = constant;
  Rational slope = 0;
  for (std::size_t p = 0; p < coeffs.size(); ++p) {
    if (coeffs[p] == 0) continue;
    at_zero += coeffs[p] * ray.base()[p];
    slope += coeffs[p] * ray.direction()[p];
  }
  return {at_zero, slope};
}

bool AffineRhs::depends_on_restraint() const {
  return std::any_of(coeffs.begin(), coeffs.end(), [](int c) { return c != 0; });
}

bool AffineRhs::dominates(const AffineRhs& other) const {
  if (constant > other.constant) return false;
  for (std::size_t p = 0; p < coeffs.size(); ++p) {
    if (coeffs[p] > other.coeffs[p]) return false;
  }
  return true;
}

ParametricPolytope::ParametricPolytope(std::size_t dimension, std::size_t restraint_size,
                                       std::vector<ConstraintRow> rows)
    : dimension_(dimension), restraint_size_(restraint_size), rows_(std::move(rows)) {
  if (dimension_ == 0) throw InputError("parametric polytope needs dimension >= 1");
  if (rows_.size() > LabelSet::kCapacity) {
    throw InputError("too many constraint rows (" + std::to_string(rows_.size()) + ")");
  }
  std::set<std::string, std::less<>> seen;
  std::vector<bool> has_upper(dimension_), has_lower(dimension_);
  for (const auto& row : rows_) {
    if (!seen.insert(row.label).second) throw InputError("duplicate label " + row.label);
    if (row.lhs.size() != dimension_) throw InputError("row " + row.label + " has wrong width");
    if (row.rhs.coeffs.size() != restraint_size_) throw InputError("row " + row.label + " has wrong rhs width");
    int nonzero = 0;
    for (std::size_t i = 0; i < dimension_; ++i) {
      const int a = row.lhs[i];
      if (a < -1 || a > 1) throw InputError("row " + row.label + " has an entry outside {-1,0,1}");
      if (a != 0) ++nonzero;
    }
    if (nonzero > 2) throw InputError("row " + row.label + " has more than two nonzero entries");
    for (int c : row.rhs.coeffs) {
      if (c != 0 && c != -1) throw InputError("row " + row.label + " has a restraint coefficient outside {-1,0}");
    }
    if (nonzero == 1) {
      for (std::size_t i = 0; i < dimension_; ++i) {
        if (row.lhs[i] == 1) has_upper[i] = true;
        if (row.lhs[i] == -1) has_lower[i] = true;
      }
    }
  }
  for (std::size_t i = 0; i < dimension_; ++i) {
    if (!has_upper[i] || !has_lower[i]) {
      throw InputError("system lacks a bounding box row for coordinate " + std::to_string(i + 1));
    }
  }
}

std::optional<std::size_t> ParametricPolytope::find(std::string_view label) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].label == label) return i;
  }
  return std::nullopt;
}

std::size_t ParametricPolytope::index_of(std::string_view label) const {
  if (auto i = find(label)) return *i;
  throw std::out_of_range("no constraint labelled " + std::string(label));
}

LabelSet ParametricPolytope::labels(std::initializer_list<std::string_view> names) const {
  LabelSet out;
  for (auto name : names) out.insert(index_of(name));
  return out;
}

std::vector<std::size_t> FacePoset::f_vector() const {
  std::vector<std::size_t> out;
  for (const auto& f : faces) {
    if (out.size() <= static_cast<std::size_t>(f.dimension)) out.resize(f.dimension + 1, 0);
    ++out[f.dimension];
  }
  return out;
}

namespace {

/// Rank by fraction-free elimination over the integers (entries stay small).
std::size_t integer_rank(std::vector<std::vector<long long>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m.front().size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][c] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (m[r][c] == 0) continue;
      const long long a = m[rank][c];
      const long long b = m[r][c];
      long long g = 0;
      for (std::size_t k = 0; k < cols; ++k) {
        m[r][k] = m[r][k] * a - m[rank][k] * b;
        g = std::gcd(g, m[r][k]);
      }
      if (g > 1) {
        for (auto& v : m[r]) v /= g;
      }
    }
    ++rank;
  }
  return rank;
}

/// Inverse of a square integer block, or nullopt when singular.
std::optional<std::vector<Rational>> invert(const ParametricPolytope& p, const std::vector<std::size_t>& rows) {
  const std::size_t n = p.dimension();
  std::vector<Rational> a(n * 2 * n);
  const std::size_t w = 2 * n;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i * w + j] = p.row(rows[i]).lhs[j];
    a[i * w + n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && a[pivot * w + c] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != c) {
      for (std::size_t k = 0; k < w; ++k) std::swap(a[pivot * w + k], a[c * w + k]);
    }
    const Rational inv = 1 / a[c * w + c];
    for (std::size_t k = 0; k < w; ++k) a[c * w + k] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r * w + c] == 0) continue;
      const Rational f = a[r * w + c];
      for (std::size_t k = 0; k < w; ++k) a[r * w + k] -= f * a[c * w + k];
    }
  }
  std::vector<Rational> out(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = a[i * w + n + j];
  }
  return out;
}

bool is_zero_row(const ConstraintRow& row) {
  return std::all_of(row.lhs.begin(), row.lhs.end(), [](int a) { return a == 0; });
}

template <typename Visit>
void for_each_combination(std::size_t n, std::size_t k, Visit&& visit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    visit(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

Rational dot(const std::vector<int>& a, const std::vector<Rational>& x) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 1) {
      s += x[i];
    } else if (a[i] == -1) {
      s -= x[i];
    }
  }
  return s;
}

}  // namespace

std::size_t row_rank(const ParametricPolytope& p, const LabelSet& labels) {
  std::vector<std::vector<long long>> m;
  for (auto l : labels.indices()) {
    const auto& lhs = p.row(l).lhs;
    m.emplace_back(lhs.begin(), lhs.end());
  }
  return integer_rank(std::move(m));
}

VertexEnumerator::VertexEnumerator(const ParametricPolytope& p) : polytope_(&p) {
  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!is_zero_row(p.row(i))) usable.push_back(i);
  }
  for_each_combination(usable.size(), p.dimension(), [&](const std::vector<std::size_t>& idx) {
    std::vector<std::size_t> rows;
    rows.reserve(idx.size());
    for (auto i : idx) rows.push_back(usable[i]);
    if (auto inv = invert(p, rows)) {
      LabelSet members;
      for (auto r : rows) members.insert(r);
      bases_.push_back({std::move(rows), std::move(*inv), members});
    }
  });
}

std::optional<std::size_t> VertexEnumerator::find_basis(const std::vector<std::size_t>& rows) const {
  std::vector<std::size_t> sorted = rows;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < bases_.size(); ++i) {
    if (bases_[i].rows == sorted) return i;
  }
  return std::nullopt;
}

std::vector<Rational> VertexEnumerator::vertex(const Basis& basis, const RestraintVector& r) const {
  const std::size_t n = polytope_->dimension();
  std::vector<Rational> b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = polytope_->row(basis.rows[i]).rhs(r);
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (basis.inverse[i * n + j] != 0) s += basis.inverse[i * n + j] * b[j];
    }
    x[i] = std::move(s);
  }
  return x;
}

bool VertexEnumerator::feasible(const std::vector<Rational>& x, const RestraintVector& r) const {
  for (const auto& row : polytope_->rows()) {
    if (dot(row.lhs, x) > row.rhs(r)) return false;
  }
  return true;
}

LabelSet VertexEnumerator::tight_set(const std::vector<Rational>& x, const RestraintVector& r) const {
  LabelSet out;
  for (std::size_t i = 0; i < polytope_->size(); ++i) {
    const auto& row = polytope_->row(i);
    if (dot(row.lhs, x) == row.rhs(r)) out.insert(i);
  }
  return out;
}

PolytopeType VertexEnumerator::type_at(const RestraintVector& r) const {
  std::vector<Rational> rhs(polytope_->size());
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = polytope_->row(i).rhs(r);
  const std::size_t n = polytope_->dimension();
  PolytopeType type;
  std::vector<Rational> x(n);
  for (const auto& basis : bases_) {
    for (std::size_t i = 0; i < n; ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (basis.inverse[i * n + j] != 0) s += basis.inverse[i * n + j] * rhs[basis.rows[j]];
      }
      x[i] = std::move(s);
    }
    LabelSet tight;
    bool ok = true;
    for (std::size_t l = 0; l < rhs.size() && ok; ++l) {
      const Rational lhs = dot(polytope_->row(l).lhs, x);
      if (lhs > rhs[l]) {
        ok = false;
      } else if (lhs == rhs[l]) {
        tight.insert(l);
      }
    }
    if (ok) type.vertices.push_back(tight);
  }
  std::sort(type.vertices.begin(), type.vertices.end());
  type.vertices.erase(std::unique(type.vertices.begin(), type.vertices.end()), type.vertices.end());
  return type;
}

RayPolytope::RayPolytope(const VertexEnumerator& enumerator, const Ray& ray) : enumerator_(&enumerator) {
  const auto& p = enumerator.polytope();
  const std::size_t n = p.dimension();
  std::vector<std::pair<Rational, Rational>> rhs;
  rhs.reserve(p.size());
  for (const auto& row : p.rows()) rhs.push_back(row.rhs.along(ray));

  slacks_.reserve(enumerator.bases().size());
  for (const auto& basis : enumerator.bases()) {
    std::vector<Rational> x0(n), x1(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const Rational& m = basis.inverse[i * n + j];
        if (m == 0) continue;
        x0[i] += m * rhs[basis.rows[j]].first;
        x1[i] += m * rhs[basis.rows[j]].second;
      }
    }
    std::vector<Slack> row_slacks;
    row_slacks.reserve(p.size());
    for (std::size_t l = 0; l < p.size(); ++l) {
      const auto& lhs = p.row(l).lhs;
      row_slacks.push_back({rhs[l].first - dot(lhs, x0), rhs[l].second - dot(lhs, x1)});
    }
    slacks_.push_back(std::move(row_slacks));
  }
}

PolytopeType RayPolytope::type_at(const Rational& t) const {
  PolytopeType type;
  Rational value;
  for (const auto& row_slacks : slacks_) {
    LabelSet tight;
    bool ok = true;
    for (std::size_t l = 0; l < row_slacks.size(); ++l) {
      const auto& s = row_slacks[l];
      if (s.slope == 0) {
        value = s.at_zero;
      } else {
        value = s.slope * t;
        value += s.at_zero;
      }
      const int sign = value.sign();
      if (sign < 0) {
        ok = false;
        break;
      }
      if (sign == 0) tight.insert(l);
    }
    if (ok) type.vertices.push_back(tight);
  }
  std::sort(type.vertices.begin(), type.vertices.end());
  type.vertices.erase(std::unique(type.vertices.begin(), type.vertices.end()), type.vertices.end());
  return type;
}

std::vector<RayPolytope::Root> RayPolytope::roots() const {
  std::vector<Root> out;
  const auto& bases = enumerator_->bases();
  for (std::size_t b = 0; b < slacks_.size(); ++b) {
    for (std::size_t l = 0; l < slacks_[b].size(); ++l) {
      if (bases[b].members.contains(l)) continue;
      const auto& s = slacks_[b][l];
      if (s.slope == 0) continue;
      Rational t = -s.at_zero / s.slope;
      if (t > 0) out.push_back({std::move(t), b, l});
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> basic_subsets(const ParametricPolytope& p) {
  VertexEnumerator enumerator(p);
  std::vector<std::vector<std::size_t>> out;
  for (const auto& b : enumerator.bases()) out.push_back(b.rows);
  return out;
}

std::vector<Rational> potential_vertex(const ParametricPolytope& p, const std::vector<std::size_t>& beta,
                                       const RestraintVector& r) {
  std::vector<std::size_t> rows = beta;
  std::sort(rows.begin(), rows.end());
  if (rows.size() != p.dimension() || std::adjacent_find(rows.begin(), rows.end()) != rows.end() ||
      rows.back() >= p.size()) {
    throw InputError("subset is not basic: wrong size or repeated labels");
  }
  auto inv = invert(p, rows);
  if (!inv) throw InputError("subset is not basic: rows are linearly dependent");
  Basis basis{rows, std::move(*inv), {}};
  // A throwaway enumerator would enumerate every basis; evaluate directly.
  const std::size_t n = p.dimension();
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) x[i] += basis.inverse[i * n + j] * p.row(rows[j]).rhs(r);
  }
  return x;
}

LabelSet abstract_vertex(const ParametricPolytope& p, const std::vector<std::size_t>& beta, const RestraintVector& r) {
  const auto x = potential_vertex(p, beta, r);
  LabelSet out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (dot(p.row(i).lhs, x) == p.row(i).rhs(r)) out.insert(i);
  }
  return out;
}

PolytopeType polytope_type(const ParametricPolytope& p, const RestraintVector& r) {
  return VertexEnumerator(p).type_at(r);
}

FacePoset face_poset(const ParametricPolytope& p, const PolytopeType& type) {
  if (type.empty()) throw InputError("face poset of an empty polytope");
  std::set<LabelSet> all(type.vertices.begin(), type.vertices.end());
  std::vector<LabelSet> frontier = type.vertices;
  while (!frontier.empty()) {
    std::vector<LabelSet> next;
    for (const auto& f : frontier) {
      for (const auto& v : type.vertices) {
        LabelSet meet = f & v;
        if (all.insert(meet).second) next.push_back(meet);
      }
    }
    frontier = std::move(next);
  }
  FacePoset poset;
  poset.faces.reserve(all.size());
  for (const auto& labels : all) {
    const int dim = static_cast<int>(p.dimension()) - static_cast<int>(row_rank(p, labels));
    poset.faces.push_back({labels, dim});
  }
  std::sort(poset.faces.begin(), poset.faces.end(), [](const Face& a, const Face& b) {
    if (a.dimension != b.dimension) return a.dimension < b.dimension;
    return a.labels < b.labels;
  });
  return poset;
}

bool types_equal(const PolytopeType& a, const PolytopeType& b) { return a.vertices == b.vertices; }

nlohmann::json type_to_json(const ParametricPolytope& p, const PolytopeType& type) {
  auto out = nlohmann::json::array();
  for (const auto& v : type.vertices) {
    auto names = nlohmann::json::array();
    for (auto l : v.indices()) names.push_back(p.row(l).label);
    out.push_back(std::move(names));
  }
  return out;
}

}  // namespace graphconfig
