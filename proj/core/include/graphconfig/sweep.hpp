#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "graphconfig/complex.hpp"

namespace graphconfig {

/// Where a candidate critical value came from: a basis and an outside row
/// of some cell's system, or a pair of node coordinates of a 0-cell.
struct Provenance {
  std::string cell;
  std::vector<std::string> basis;  // empty for 0-cells
  std::string row;                 // label, or `pair[i,j]` for 0-cells
};

struct Candidate {
  Rational t;
  Provenance provenance;
};

/// Positive ray parameters at which some cell could change type, sorted
/// and deduplicated (the first provenance in cell order is kept).
std::vector<Candidate> critical_candidates(const CellAtlas& atlas, const Ray& ray);

/// Per-cell types along a ray, cached for repeated evaluation.
class RayFingerprinter {
 public:
  RayFingerprinter(const CellAtlas& atlas, const Ray& ray);

  const CellAtlas& atlas() const { return *atlas_; }
  const Ray& ray() const { return ray_; }
  std::vector<PolytopeType> types_at(const Rational& t) const;
  std::vector<Candidate> candidates() const;

 private:
  const CellAtlas* atlas_;
  Ray ray_;
  std::vector<std::optional<RayPolytope>> polytopes_;
};

/// FNV-1a (64 bit, hex) of the canonical JSON of the nonempty cell types.
std::string fingerprint_hash(const CellAtlas& atlas, const std::vector<PolytopeType>& types);

struct CriticalValue {
  Rational t;
  Provenance provenance;
  bool spurious = false;
  std::string fingerprint;
  bool empty = false;  // every cell empty at t
  std::optional<Invariants> invariants;  // nonspurious values only
};

/// A maximal open interval of constant type; `hi` absent means unbounded.
struct SweepInterval {
  Rational lo;
  std::optional<Rational> hi;
  Rational sample;
  std::string fingerprint;
  bool empty = false;
  Invariants invariants;
};

struct CriticalSweep {
  std::vector<CriticalValue> criticals;  // all candidates, spurious ones flagged
  std::vector<SweepInterval> intervals;  // merged across spurious candidates
};

struct SweepOptions {
  /// Build the complex at each nonspurious critical value too.
  bool critical_invariants = true;
};

/**
 * Samples the type fingerprint at every candidate, at the midpoints
 * between consecutive candidates, and one unit beyond the last. A
 * candidate whose fingerprint equals both neighbouring intervals' is
 * spurious; intervals separated only by spurious candidates are merged
 * and sampled at the merged midpoint.
 */
CriticalSweep sweep_types(const CellAtlas& atlas, const Ray& ray, const SweepOptions& options = {});

std::vector<Rational> nonspurious_criticals(const CriticalSweep& s);

/// Distinct fingerprints over intervals and nonspurious critical values.
std::size_t isotopy_class_count(const CriticalSweep& s, bool include_empty);

/// Distinct (components, betti_mod2) signatures over intervals and
/// nonspurious critical values; a lower bound on the homotopy types.
std::size_t homotopy_invariant_classes(const CriticalSweep& s, bool include_empty);

nlohmann::json sweep_report(const CriticalSweep& s, bool include_empty);
std::string sweep_table(const CriticalSweep& s, bool include_empty);

}  // namespace graphconfig
