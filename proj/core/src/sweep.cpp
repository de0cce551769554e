#include "graphconfig/sweep.hpp"

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <set>
#include <sstream>

#include "graphconfig/errors.hpp"
#include "parallel.hpp"

namespace graphconfig {

RayFingerprinter::RayFingerprinter(const CellAtlas& atlas, const Ray& ray)
    : atlas_(&atlas), ray_(ray), polytopes_(atlas.size()) {
  if (ray.points() != atlas.points()) throw InputError("ray does not match the number of points");
  detail::parallel_for(atlas.size(), [&](std::size_t i) {
    if (const auto* e = atlas.enumerator(i)) polytopes_[i].emplace(*e, ray_);
  });
}

std::vector<PolytopeType> RayFingerprinter::types_at(const Rational& t) const {
  const RestraintVector r = ray_.at(t);
  std::vector<PolytopeType> types(atlas_->size());
  for (std::size_t i = 0; i < types.size(); ++i) {
    if (polytopes_[i]) {
      types[i] = polytopes_[i]->type_at(t);
    } else if (atlas_->node_configuration_admissible(i, r)) {
      types[i].vertices.emplace_back();
    }
  }
  return types;
}

std::vector<Candidate> RayFingerprinter::candidates() const {
  std::vector<Candidate> out;
  const std::size_t n = atlas_->points();
  for (std::size_t i = 0; i < atlas_->size(); ++i) {
    const CellDescriptor& cell = atlas_->cell(i);
    if (polytopes_[i]) {
      const auto& p = polytopes_[i]->enumerator().polytope();
      const auto& bases = polytopes_[i]->enumerator().bases();
      for (auto& root : polytopes_[i]->roots()) {
        Provenance prov{cell.to_string(), {}, p.row(root.row).label};
        for (auto b : bases[root.basis].rows) prov.basis.push_back(p.row(b).label);
        out.push_back({std::move(root.t), std::move(prov)});
      }
      continue;
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        const std::size_t pair = pair_index(n, a, b);
        const Rational& dir = ray_.direction()[pair];
        if (dir == 0) continue;
        Rational t = (atlas_->distances()(cell[a].index, cell[b].index) - ray_.base()[pair]) / dir;
        if (t <= 0) continue;
        out.push_back({std::move(t),
                       {cell.to_string(), {}, "pair[" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "]"}});
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Candidate& x, const Candidate& y) { return x.t < y.t; });
  out.erase(std::unique(out.begin(), out.end(), [](const Candidate& x, const Candidate& y) { return x.t == y.t; }),
            out.end());
  return out;
}

std::vector<Candidate> critical_candidates(const CellAtlas& atlas, const Ray& ray) {
  return RayFingerprinter(atlas, ray).candidates();
}

std::string fingerprint_hash(const CellAtlas& atlas, const std::vector<PolytopeType>& types) {
  nlohmann::json doc = nlohmann::json::array();
  for (std::size_t i = 0; i < types.size(); ++i) {
    if (types[i].empty()) continue;
    const auto* system = atlas.system(i);
    doc.push_back({atlas.cell(i).to_string(), system ? type_to_json(*system, types[i]) : nlohmann::json(true)});
  }
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : doc.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

namespace {

bool all_empty(const std::vector<PolytopeType>& types) {
  return std::all_of(types.begin(), types.end(), [](const PolytopeType& t) { return t.empty(); });
}

struct Sample {
  std::vector<PolytopeType> types;
  std::string hash;
};

}  // namespace

CriticalSweep sweep_types(const CellAtlas& atlas, const Ray& ray, const SweepOptions& options) {
  const RayFingerprinter fp(atlas, ray);
  const std::vector<Candidate> cands = fp.candidates();
  const std::size_t m = cands.size();

  // Raw interval k is (c_{k-1}, c_k) with c_{-1} = 0 and c_m = infinity.
  auto raw_sample = [&](std::size_t k) -> Rational {
    const Rational lo = k == 0 ? Rational(0) : cands[k - 1].t;
    if (k == m) return lo + 1;
    return (lo + cands[k].t) / 2;
  };
  // Sample slots: 2k = interval k, 2k + 1 = candidate k.
  std::vector<Sample> samples(2 * m + 1);
  detail::parallel_for(samples.size(), [&](std::size_t s) {
    const Rational t = s % 2 == 0 ? raw_sample(s / 2) : cands[s / 2].t;
    samples[s].types = fp.types_at(t);
    samples[s].hash = fingerprint_hash(atlas, samples[s].types);
  });

  CriticalSweep out;
  for (std::size_t k = 0; k < m; ++k) {
    CriticalValue cv;
    cv.t = cands[k].t;
    cv.provenance = cands[k].provenance;
    const auto& here = samples[2 * k + 1];
    cv.spurious = here.types == samples[2 * k].types && here.types == samples[2 * k + 2].types;
    cv.fingerprint = here.hash;
    cv.empty = all_empty(here.types);
    out.criticals.push_back(std::move(cv));
  }

  std::size_t first = 0;
  for (std::size_t k = 0; k <= m; ++k) {
    if (k < m && out.criticals[k].spurious) continue;
    SweepInterval iv;
    iv.lo = first == 0 ? Rational(0) : cands[first - 1].t;
    if (k < m) iv.hi = cands[k].t;
    iv.sample = iv.hi ? Rational((iv.lo + *iv.hi) / 2) : Rational(iv.lo + 1);
    iv.fingerprint = samples[2 * first].hash;
    iv.empty = all_empty(samples[2 * first].types);
    out.intervals.push_back(std::move(iv));
    first = k + 1;
  }

  // Complex invariants: one task per interval, then per nonspurious critical value.
  std::vector<std::size_t> critical_tasks;
  if (options.critical_invariants) {
    for (std::size_t k = 0; k < m; ++k) {
      if (!out.criticals[k].spurious) critical_tasks.push_back(k);
    }
  }
  detail::parallel_for(out.intervals.size() + critical_tasks.size(), [&](std::size_t task) {
    if (task < out.intervals.size()) {
      auto& iv = out.intervals[task];
      const auto types = fp.types_at(iv.sample);
      if (fingerprint_hash(atlas, types) != iv.fingerprint) {
        throw InternalError("type changes inside the interval starting at " + to_string(iv.lo));
      }
      iv.invariants = invariants(assemble_complex(atlas, types));
    } else {
      const std::size_t k = critical_tasks[task - out.intervals.size()];
      out.criticals[k].invariants = invariants(assemble_complex(atlas, samples[2 * k + 1].types));
    }
  });
  return out;
}

std::vector<Rational> nonspurious_criticals(const CriticalSweep& s) {
  std::vector<Rational> out;
  for (const auto& c : s.criticals) {
    if (!c.spurious) out.push_back(c.t);
  }
  return out;
}

std::size_t isotopy_class_count(const CriticalSweep& s, bool include_empty) {
  std::set<std::string> classes;
  for (const auto& iv : s.intervals) {
    if (include_empty || !iv.empty) classes.insert(iv.fingerprint);
  }
  for (const auto& c : s.criticals) {
    if (!c.spurious && (include_empty || !c.empty)) classes.insert(c.fingerprint);
  }
  return classes.size();
}

std::size_t homotopy_invariant_classes(const CriticalSweep& s, bool include_empty) {
  std::set<std::pair<std::size_t, std::vector<std::size_t>>> classes;
  auto add = [&](const Invariants& inv) {
    if (include_empty || !inv.empty()) classes.emplace(inv.components, inv.betti_mod2);
  };
  for (const auto& iv : s.intervals) add(iv.invariants);
  for (const auto& c : s.criticals) {
    if (!c.spurious && c.invariants) add(*c.invariants);
  }
  return classes.size();
}

namespace {

nlohmann::json invariants_json(const Invariants& inv) {
  return {{"f_vector", inv.f_vector},
          {"components", inv.components},
          {"euler", inv.euler},
          {"betti_mod2", inv.betti_mod2}};
}

std::string join(const std::vector<std::size_t>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + ")";
}

}  // namespace

nlohmann::json sweep_report(const CriticalSweep& s, bool include_empty) {
  nlohmann::json criticals = nlohmann::json::array();
  for (const auto& c : s.criticals) {
    nlohmann::json entry = {{"t", to_string(c.t)},
                            {"provenance", {{"cell", c.provenance.cell},
                                            {"basis", c.provenance.basis},
                                            {"row", c.provenance.row}}},
                            {"spurious", c.spurious},
                            {"fingerprint_hash", c.fingerprint}};
    if (c.invariants) entry.update(invariants_json(*c.invariants));
    criticals.push_back(std::move(entry));
  }
  nlohmann::json intervals = nlohmann::json::array();
  for (const auto& iv : s.intervals) {
    nlohmann::json entry = {{"interval", {to_string(iv.lo), iv.hi ? to_string(*iv.hi) : "inf"}},
                            {"sample", to_string(iv.sample)},
                            {"fingerprint_hash", iv.fingerprint}};
    entry.update(invariants_json(iv.invariants));
    intervals.push_back(std::move(entry));
  }
  nlohmann::json nonspurious = nlohmann::json::array();
  for (const auto& t : nonspurious_criticals(s)) nonspurious.push_back(to_string(t));
  return {{"critical_values", std::move(nonspurious)},
          {"candidates", std::move(criticals)},
          {"intervals", std::move(intervals)},
          {"include_empty", include_empty},
          {"isotopy_class_count", isotopy_class_count(s, include_empty)},
          {"homotopy_invariant_classes", homotopy_invariant_classes(s, include_empty)}};
}

std::string sweep_table(const CriticalSweep& s, bool include_empty) {
  std::ostringstream out;
  auto row = [&](const std::string& where, const std::string& kind, const Invariants* inv, const std::string& hash) {
    out << std::left << std::setw(24) << where << std::setw(10) << kind;
    if (inv) {
      out << std::setw(12) << inv->components << std::setw(14) << join(inv->betti_mod2) << std::setw(20)
          << join(inv->f_vector);
    } else {
      out << std::setw(12) << "-" << std::setw(14) << "-" << std::setw(20) << "-";
    }
    out << hash << '\n';
  };
  out << std::left << std::setw(24) << "parameter" << std::setw(10) << "kind" << std::setw(12) << "components"
      << std::setw(14) << "betti_mod2" << std::setw(20) << "f_vector"
      << "fingerprint\n";
  std::size_t c = 0;
  for (const auto& iv : s.intervals) {
    row("(" + to_string(iv.lo) + ", " + (iv.hi ? to_string(*iv.hi) : "inf") + ")", "interval", &iv.invariants,
        iv.fingerprint);
    while (c < s.criticals.size() && iv.hi && s.criticals[c].t <= *iv.hi) {
      const auto& cv = s.criticals[c++];
      if (cv.spurious) continue;
      row(to_string(cv.t), "critical", cv.invariants ? &*cv.invariants : nullptr, cv.fingerprint);
    }
  }
  out << "isotopy classes: " << isotopy_class_count(s, include_empty)
      << ", homotopy signatures: " << homotopy_invariant_classes(s, include_empty) << '\n';
  return out.str();
}

}  // namespace graphconfig
