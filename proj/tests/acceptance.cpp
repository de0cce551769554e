// Acceptance checks: one PASS/FAIL line per criterion. All comparisons are
// exact; runtime limits are reported alongside.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "graphconfig/bounds.hpp"
#include "graphconfig/cells.hpp"
#include "graphconfig/complex.hpp"
#include "graphconfig/oracle.hpp"
#include "graphconfig/sweep.hpp"
#include "support.hpp"

using namespace graphconfig;
using graphconfig::testing::Q;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

using Check = std::function<void(Outcome&)>;

std::string join(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

// Corolla pairs: components = 2 * #{i<j : L_i + L_j >= t}, and at least
// binom(k,2) signatures once t > 3/2.
void corolla_reproduction(Outcome& o) {
  for (int k : {3, 4}) {
    const MetricGraph g = corolla(k);
    const CellAtlas atlas(g, 2);
    const CriticalSweep s = sweep_types(atlas, Ray::scalar(2));
    std::set<std::pair<std::size_t, std::vector<std::size_t>>> signatures;
    for (const auto& iv : s.intervals) {
      if (iv.lo < Q("3/2")) continue;
      std::size_t pairs = 0;
      for (std::size_t i = 0; i < g.edge_count(); ++i)
        for (std::size_t j = i + 1; j < g.edge_count(); ++j)
          if (g.edge(i).length + g.edge(j).length >= iv.sample) ++pairs;
      o.require(iv.invariants.components == 2 * pairs,
                "k=" + std::to_string(k) + " t=" + to_string(iv.sample) + " components " +
                    std::to_string(iv.invariants.components) + " expected " + std::to_string(2 * pairs));
      if (!iv.empty) signatures.insert({iv.invariants.components, iv.invariants.betti_mod2});
    }
    const std::size_t needed = static_cast<std::size_t>(k * (k - 1) / 2);
    o.require(signatures.size() >= needed, "k=" + std::to_string(k) + " signatures");
    o.detail << "k=" << k << ": " << signatures.size() << " signatures (need " << needed << "); ";
  }
}

struct SameEdgeCase {
  MetricGraph g = graphconfig::testing::shortcut_triangle();
  DistanceMatrix delta = node_distances(g);
  ParametricPolytope p =
      inequality_system(CellDescriptor({Placement::on_edge(0, 0), Placement::on_edge(0, 1)}), g, delta);
  Rational d = delta(g.edge(0).a, g.edge(0).b);
  Rational L = g.edge(0).length;
};

void same_edge_transitions(Outcome& o) {
  const SameEdgeCase c;
  const VertexEnumerator en(c.p);
  const RayPolytope along(en, Ray::scalar(2));
  std::set<Rational> changes;
  for (const auto& root : along.roots()) {
    const Rational eps = root.t / 1000;
    const auto at = along.type_at(root.t);
    if (along.type_at(root.t - eps) != at || at != along.type_at(root.t + eps)) changes.insert(root.t);
  }
  const Rational top = (c.d + c.L) / 2;
  o.require(changes == std::set<Rational>{c.d, top}, "transition set");
  for (const char* beyond : {"1/100", "1/2", "3"})
    o.require(along.type_at(top + Q(beyond)).empty(), "empty beyond the upper transition");
  o.require(!along.type_at(top).empty(), "nonempty at the upper transition");
  o.detail << "delta=" << to_string(c.d) << " L=" << to_string(c.L) << " transitions {";
  for (const auto& t : changes) o.detail << to_string(t) << (t == *changes.rbegin() ? "" : ",");
  o.detail << "}; ";
}

void same_edge_pentagon(Outcome& o) {
  const SameEdgeCase c;
  const Rational mid = (c.d + (c.d + c.L) / 2) / 2;
  const auto f = face_poset(c.p, polytope_type(c.p, RestraintVector(2, mid))).f_vector();
  o.require(f == std::vector<std::size_t>{5, 5, 1}, "f-vector " + join(f) + " at t=" + to_string(mid));
  o.detail << "middle interval f-vector " << join(f) << " (expected (5,5,1)); ";
}

void bound_compliance(Outcome& o) {
  std::mt19937 rng(2024);
  int graphs = 0;
  for (int trial = 0; trial < 24; ++trial) {
    const MetricGraph g = graphconfig::testing::random_graph(rng, 1 + trial % 6);
    const CellAtlas atlas(g, 2);
    const CriticalSweep s = sweep_types(atlas, Ray::scalar(2), {.critical_invariants = false});
    const long E = static_cast<long>(g.edge_count());
    const std::size_t m = nonspurious_criticals(s).size();
    const std::size_t classes = isotopy_class_count(s, true);
    o.require(BigInt(m) <= n2_critical_bound(E), "critical count on graph " + std::to_string(trial));
    o.require(BigInt(classes) <= n2_isotopy_bound(E), "class count on graph " + std::to_string(trial));
    ++graphs;
  }
  o.detail << graphs << " random graphs; ";
}

void shortest_edge_law(Outcome& o) {
  for (const auto& [name, g] : graphconfig::testing::test_graphs()) {
    const CellAtlas atlas(g, 2);
    const auto crit = nonspurious_criticals(sweep_types(atlas, Ray::scalar(2), {.critical_invariants = false}));
    o.require(!crit.empty() && crit.front() == g.shortest_edge_length(), name);
  }
}

void galois_connection(Outcome& o) {
  std::size_t compared = 0;
  for (const auto& [name, g] : graphconfig::testing::test_graphs()) {
    const CellAtlas atlas(g, 2);
    const CriticalSweep s = sweep_types(atlas, Ray::scalar(2), {.critical_invariants = false});
    std::vector<Rational> params;
    for (const auto& iv : s.intervals) params.push_back(iv.sample);
    for (const auto& t : nonspurious_criticals(s)) params.push_back(t);
    for (std::size_t i = 0; i < atlas.size(); ++i) {
      const ParametricPolytope* p = atlas.system(i);
      if (!p) continue;
      for (const auto& t : params) {
        const RestraintVector r(2, t);
        const PolytopeType type = atlas.enumerator(i)->type_at(r);
        const FacePoset brute = bruteforce_face_poset(*p, r);
        if (type.empty()) {
          o.require(brute.faces.empty(), name + " " + atlas.cell(i).to_string() + " at " + to_string(t));
        } else {
          o.require(face_poset(*p, type) == brute, name + " " + atlas.cell(i).to_string() + " at " + to_string(t));
        }
        ++compared;
      }
    }
  }
  std::mt19937 rng(33);
  std::size_t random_checked = 0;
  for (int trial = 0; random_checked < 100; ++trial) {
    const ParametricPolytope p = graphconfig::testing::random_system(rng, 3, 2 + trial % 7);
    const RestraintVector r = graphconfig::testing::random_restraint(rng, 3, 12);
    const PolytopeType type = polytope_type(p, r);
    const FacePoset brute = bruteforce_face_poset(p, r);
    if (type.empty()) {
      o.require(brute.faces.empty(), "random system " + std::to_string(trial));
      continue;
    }
    o.require(face_poset(p, type) == brute, "random system " + std::to_string(trial));
    ++random_checked;
  }
  o.detail << compared << " cell/parameter pairs, " << random_checked << " random 3-dimensional systems; ";
}

void oracle_concordance(Outcome& o) {
  std::size_t compared = 0;
  for (const auto& [name, g] : graphconfig::testing::test_graphs()) {
    const CellAtlas atlas(g, 2);
    const CriticalSweep s = sweep_types(atlas, Ray::scalar(2), {.critical_invariants = false});
    for (const auto& iv : s.intervals) {
      const RestraintVector r(2, iv.sample);
      const Rational mesh = auto_mesh(g, r);
      const auto coarse = discrete_invariants(g, 2, r, mesh);
      const auto fine = discrete_invariants(g, 2, r, mesh / 2);
      const std::string where = name + " t=" + to_string(iv.sample);
      o.require(coarse.components == iv.invariants.components, where + " coarse");
      o.require(fine.components == iv.invariants.components, where + " fine");
      ++compared;
    }
  }
  o.detail << compared << " interval samples at two meshes; ";
}

void convexity(Outcome& o) {
  std::mt19937 rng(77);
  int checked = 0;
  int attempts = 0;
  while (checked < 500 && attempts < 200000) {
    ++attempts;
    const ParametricPolytope p = graphconfig::testing::random_system(rng, 1 + attempts % 3, 1 + attempts % 5);
    const RestraintVector r = graphconfig::testing::random_restraint(rng, 3, 16);
    const RestraintVector s = graphconfig::testing::random_restraint(rng, 3, 16);
    const PolytopeType tr = polytope_type(p, r);
    if (tr.empty() || !types_equal(tr, polytope_type(p, s))) continue;
    std::vector<Rational> mid(r.size());
    for (std::size_t k = 0; k < mid.size(); ++k) mid[k] = (r[k] + s[k]) / 2;
    o.require(types_equal(tr, polytope_type(p, RestraintVector(3, mid))), "triple " + std::to_string(checked));
    ++checked;
  }
  o.require(checked == 500, "generated triples");
  o.detail << checked << " triples from " << attempts << " draws; ";
}

void isotopy_invariance(Outcome& o) {
  std::size_t compared = 0;
  for (const auto& [name, g] : graphconfig::testing::test_graphs()) {
    const CellAtlas atlas(g, 2);
    const Ray ray = Ray::scalar(2);
    const RayFingerprinter fp(atlas, ray);
    const CriticalSweep s = sweep_types(atlas, ray, {.critical_invariants = false});
    for (const auto& iv : s.intervals) {
      const Rational width = iv.hi ? *iv.hi - iv.lo : Rational(6);
      std::vector<std::string> fingerprints;
      std::vector<std::vector<std::size_t>> fs;
      std::vector<Invariants> invs;
      for (const Rational& frac : {Q("1/3"), Q("1/2"), Q("5/7"), Q("99/100")}) {
        const Rational t = iv.lo + width * frac;
        const auto types = fp.types_at(t);
        const ConfigComplex x = assemble_complex(atlas, types);
        fingerprints.push_back(fingerprint_hash(atlas, types));
        fs.push_back(f_vector(x));
        invs.push_back(invariants(x));
      }
      const std::string where = name + " interval from " + to_string(iv.lo);
      for (std::size_t k = 1; k < fingerprints.size(); ++k) {
        o.require(fingerprints[k] == fingerprints[0], where + " fingerprint");
        o.require(fs[k] == fs[0], where + " f-vector");
        o.require(invs[k] == invs[0], where + " invariants");
      }
      o.require(fingerprints[0] == iv.fingerprint, where + " sweep fingerprint");
      ++compared;
    }
  }
  o.detail << compared << " intervals, 4 samples each; ";
}

void bounds_arithmetic(Outcome& o) {
  o.require(h_n(2) == 144, "h_2");
  o.require(rising_factorial(3, 2) == 12, "rising factorial");
  for (long d = 1; d <= 4; ++d)
    for (long k = 0; k <= 20; ++k)
      o.require(face_bound(d, k + 1) <= face_bound(d, k) + 2 * face_bound(d - 1, k),
                "face bound d=" + std::to_string(d) + " k=" + std::to_string(k));
  for (auto [n, d] : std::vector<std::pair<long, long>>{{2, 1}, {2, 2}, {3, 1}}) {
    std::vector<long> samples;
    for (long E = 1; E <= n * d + 3; ++E) samples.push_back(E);
    const int degree = degree_check(samples, n, d);
    o.require(degree == n * d, "degree for n=" + std::to_string(n) + " d=" + std::to_string(d));
    o.detail << "deg(" << n << "," << d << ")=" << degree << " ";
  }
}

struct Criterion {
  std::string id;
  std::string title;
  Check check;
  double limit_seconds;
};

std::vector<Criterion> criteria() {
  return {
      {"1", "corolla reproduction", corolla_reproduction, 10},
      {"2a", "same-edge transitions and emptiness", same_edge_transitions, 0},
      {"2b", "same-edge middle interval is a pentagon", same_edge_pentagon, 0},
      {"3", "two-point bound compliance on random graphs", bound_compliance, 120},
      {"4", "shortest-edge law", shortest_edge_law, 0},
      {"5", "face poset against brute force", galois_connection, 300},
      {"6", "components against the grid oracle", oracle_concordance, 0},
      {"7", "type convexity", convexity, 0},
      {"8", "invariants constant on sweep intervals", isotopy_invariance, 0},
      {"9", "bounds arithmetic", bounds_arithmetic, 0},
  };
}

bool run(const Criterion& c) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    c.check(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (c.limit_seconds > 0) o.require(seconds <= c.limit_seconds, "runtime limit");
  std::ostringstream time;
  time.precision(2);
  time << std::fixed << seconds << "s";
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.title << "): " << o.detail.str()
            << time.str() << std::endl;
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::string only;
  app.add_option("--criterion", only, "Run a single criterion by id (1, 2a, 2b, 3..9)");
  CLI11_PARSE(app, argc, argv);

  bool all = true;
  bool found = false;
  for (const auto& c : criteria()) {
    if (!only.empty() && c.id != only) continue;
    found = true;
    all = run(c) && all;
  }
  if (!found) {
    std::cerr << "unknown criterion " << only << "\n";
    return 1;
  }
  return all ? 0 : 1;
}
