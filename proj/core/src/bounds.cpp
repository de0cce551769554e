#include "graphconfig/bounds.hpp"

#include <cstdint>
#include <limits>
#include <set>

#include "graphconfig/cells.hpp"
#include "graphconfig/errors.hpp"

namespace graphconfig {

BigInt rising_factorial(long E, long n) {
  if (E < 1 || n < 1) throw InputError("rising factorial needs E >= 1 and n >= 1");
  BigInt out = 1;
  for (long i = 0; i < n; ++i) out *= E + i;
  return out;
}

BigInt binomial(const BigInt& n, long k) {
  if (k < 0 || n < k) return 0;
  BigInt out = 1;
  for (long i = 0; i < k; ++i) {
    out *= n - i;
    out /= i + 1;
  }
  return out;
}

BigInt h_n(long n) {
  if (n < 2) throw InputError("h_n is defined for n >= 2");
  BigInt pow2 = BigInt(1) << n;
  return pow2 * binomial(BigInt(n * n), n) * (2 * n * n - n);
}

BigInt face_bound(long d, const BigInt& k) {
  if (d < 0 || k < 0) throw InputError("face bound needs d >= 0 and k >= 0");
  BigInt out = 0;
  for (long i = 0; i <= d; ++i) out += (BigInt(1) << i) * binomial(k, i);
  return out;
}

BigInt n2_critical_bound(long E) {
  if (E < 1) throw InputError("edge count must be at least 1");
  return 9 * binomial(BigInt(E), 2) + 2 * E - 1;
}

BigInt n2_isotopy_bound(long E) {
  if (E < 1) throw InputError("edge count must be at least 1");
  return BigInt(9) * E * E - 5 * E - 1;
}

BigInt exact_cell_hyperplanes(long n) {
  if (n < 1) throw InputError("number of points must be at least 1");
  // A star with n unit edges; coordinate i on edge i.
  std::vector<MetricGraph::EdgeSpec> spec;
  for (long i = 0; i < n; ++i) spec.push_back({"hub", "leaf" + std::to_string(i + 1), Rational(1)});
  const MetricGraph g(spec);
  std::vector<Placement> coords;
  for (long i = 0; i < n; ++i) coords.push_back(Placement::on_edge(static_cast<std::size_t>(i)));
  const ParametricPolytope p = inequality_system(CellDescriptor(coords), g, node_distances(g));
  const VertexEnumerator enumerator(p);
  return BigInt(enumerator.bases().size()) * (p.size() - static_cast<std::size_t>(n));
}

int degree_check(const std::vector<long>& E_samples, long n, long d) {
  const std::set<long> distinct(E_samples.begin(), E_samples.end());
  if (distinct.size() != E_samples.size()) throw InputError("degree check needs distinct samples");
  if (static_cast<long>(E_samples.size()) < n * d + 2) {
    throw InputError("degree check needs at least nd + 2 = " + std::to_string(n * d + 2) + " samples");
  }
  const BigInt h = h_n(n);
  std::vector<Rational> xs;
  std::vector<Rational> diff;
  for (long E : E_samples) {
    xs.emplace_back(E);
    diff.emplace_back(face_bound(d, h * rising_factorial(E, n)));
  }
  // Newton divided differences; the top nonzero one gives the degree.
  int degree = 0;
  for (std::size_t order = 1; order < xs.size(); ++order) {
    for (std::size_t i = xs.size() - 1; i >= order; --i) {
      diff[i] = (diff[i] - diff[i - 1]) / (xs[i] - xs[i - order]);
    }
    if (diff[order] != 0) degree = static_cast<int>(order);
  }
  return degree;
}

BoundReport bound_report(long n, long E, long d) {
  if (d < 0) throw InputError("parameter dimension must be nonnegative");
  BoundReport out;
  out.E = E;
  out.n = n;
  out.d = d;
  out.rising_factorial = rising_factorial(E, n);
  out.h_n = h_n(n);
  out.hyperplane_count = out.h_n * out.rising_factorial;
  out.face_bound = face_bound(d, out.hyperplane_count);
  out.n2_critical_bound = n2_critical_bound(E);
  out.n2_isotopy_bound = n2_isotopy_bound(E);
  if (n <= 4) out.exact_cell_hyperplanes = exact_cell_hyperplanes(n);
  return out;
}

namespace {

/// A JSON number when it fits in 64 bits, otherwise a decimal string.
nlohmann::json integer_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return v.convert_to<std::int64_t>();
  }
  return v.str();
}

}  // namespace

nlohmann::json bound_report_json(const BoundReport& r) {
  return {{"E", r.E},
          {"n", r.n},
          {"d", r.d},
          {"rising_factorial", integer_json(r.rising_factorial)},
          {"h_n", integer_json(r.h_n)},
          {"hyperplane_count", integer_json(r.hyperplane_count)},
          {"face_bound", integer_json(r.face_bound)},
          {"n2_critical_bound", integer_json(r.n2_critical_bound)},
          {"n2_isotopy_bound", integer_json(r.n2_isotopy_bound)},
          {"exact_cell_hyperplanes",
           r.exact_cell_hyperplanes ? integer_json(*r.exact_cell_hyperplanes) : nlohmann::json(nullptr)}};
}

}  // namespace graphconfig
