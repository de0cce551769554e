#pragma once

#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "graphconfig/rational.hpp"

namespace graphconfig {

/// E (E+1) ... (E+n-1): the number of maximal cells of Γⁿ.
BigInt rising_factorial(long E, long n);
BigInt binomial(const BigInt& n, long k);
/// 2^n C(n², n) (2n² − n); throws InputError for n < 2.
BigInt h_n(long n);
/// Σ_{i=0..d} 2^i C(k, i), the face-count bound for k hyperplanes in dimension d.
BigInt face_bound(long d, const BigInt& k);
/// 9 C(E,2) + 2E − 1: critical values of r > 0 for two points.
BigInt n2_critical_bound(long E);
/// 9E² − 5E − 1: isotopy types for two points.
BigInt n2_isotopy_bound(long E);

/// Number of (basic subset, outside row) pairs of one maximal cell with
/// all n coordinates on distinct edges, counted exactly.
BigInt exact_cell_hyperplanes(long n);

/**
 * Degree of the polynomial interpolating E ↦ face_bound(d, h_n · E^{\bar n})
 * through the samples (exact divided differences). Needs at least nd + 2
 * distinct samples so that a vanishing top difference is observed; throws
 * InputError otherwise.
 */
int degree_check(const std::vector<long>& E_samples, long n, long d);

struct BoundReport {
  long E = 0;
  long n = 0;
  long d = 0;
  BigInt rising_factorial;
  BigInt h_n;
  BigInt hyperplane_count;  // h_n · E^{\bar n}
  BigInt face_bound;        // f_d(hyperplane_count)
  BigInt n2_critical_bound;
  BigInt n2_isotopy_bound;
  std::optional<BigInt> exact_cell_hyperplanes;  // n <= 4
};

BoundReport bound_report(long n, long E, long d);
/// Integers as JSON numbers, or decimal strings beyond 64 bits.
nlohmann::json bound_report_json(const BoundReport& report);

}  // namespace graphconfig
