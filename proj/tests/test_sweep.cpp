#include <gtest/gtest.h>

#include <cstdlib>
#include <random>
#include <set>

#include "graphconfig/bounds.hpp"
#include "graphconfig/sweep.hpp"
#include "support.hpp"

using namespace graphconfig;
using graphconfig::testing::Q;

namespace {

std::vector<Rational> values(std::initializer_list<const char*> xs) {
  std::vector<Rational> out;
  for (auto x : xs) out.push_back(Q(x));
  return out;
}

std::set<Rational> candidate_set(const CellAtlas& atlas) {
  std::set<Rational> out;
  for (const auto& c : critical_candidates(atlas, Ray::scalar(atlas.points()))) out.insert(c.t);
  return out;
}

}  // namespace

TEST(CriticalCandidates, SingleEdge) {
  const CellAtlas atlas(graphconfig::testing::single_edge(), 2);
  EXPECT_TRUE(candidate_set(atlas).count(Q("1")));
  const CriticalSweep s = sweep_types(atlas, Ray::scalar(2));
  EXPECT_EQ(nonspurious_criticals(s), values({"1"}));
}

// On the unit 3-star two points on distinct legs satisfy s + t >= r, whose
// combinatorics only change at r = 1 and r = 2; 3/2 is not a type change.
TEST(CriticalCandidates, ThreeStar) {
  const CellAtlas atlas(graphconfig::testing::three_star(), 2);
  const auto cands = candidate_set(atlas);
  EXPECT_TRUE(cands.count(Q("1")));
  EXPECT_TRUE(cands.count(Q("2")));
  const CriticalSweep s = sweep_types(atlas, Ray::scalar(2));
  EXPECT_EQ(nonspurious_criticals(s), values({"1", "2"}));
}

TEST(CriticalCandidates, CorollaLastValueIsLongestPair) {
  const CellAtlas atlas(corolla(2), 2);
  const CriticalSweep s = sweep_types(atlas, Ray::scalar(2));
  EXPECT_EQ(nonspurious_criticals(s).back(), Q("11/4"));
  EXPECT_TRUE(s.intervals.back().empty);
  EXPECT_EQ(s.intervals.back().lo, Q("11/4"));
}

TEST(CriticalCandidates, ProvenanceNamesTheRows) {
  const CellAtlas atlas(graphconfig::testing::shortcut_triangle(), 2);
  for (const auto& c : critical_candidates(atlas, Ray::scalar(2))) {
    EXPECT_FALSE(c.provenance.cell.empty());
    EXPECT_FALSE(c.provenance.row.empty());
    EXPECT_GT(c.t, 0);
  }
}

TEST(SweepTypes, IntervalsAreConstant) {
  const CellAtlas atlas(graphconfig::testing::shortcut_triangle(), 2);
  const Ray ray = Ray::scalar(2);
  const CriticalSweep s = sweep_types(atlas, ray);
  const RayFingerprinter fp(atlas, ray);
  const auto& first = s.intervals.front();
  ASSERT_TRUE(first.hi);
  for (const Rational t : {Rational(*first.hi / 7), Rational(*first.hi * 5 / 6)}) {
    EXPECT_EQ(fingerprint_hash(atlas, fp.types_at(t)), first.fingerprint);
  }
  // The first interval has the invariants of r -> 0+.
  EXPECT_EQ(first.invariants, invariants(build_complex(atlas, RestraintVector(2, *first.hi / 100))));
}

TEST(SweepTypes, ShortestEdgeIsFirstCriticalValue) {
  for (const auto& [name, g] : graphconfig::testing::test_graphs()) {
    const CellAtlas atlas(g, 2);
    const CriticalSweep s = sweep_types(atlas, Ray::scalar(2));
    ASSERT_FALSE(nonspurious_criticals(s).empty()) << name;
    EXPECT_EQ(nonspurious_criticals(s).front(), g.shortest_edge_length()) << name;
  }
}

TEST(SweepTypes, CorollaEmptyBeyondLongestPair) {
  const CellAtlas atlas(corolla(3), 2);
  const CriticalSweep s = sweep_types(atlas, Ray::scalar(2));
  const auto& last = s.intervals.back();
  EXPECT_FALSE(last.hi.has_value());
  EXPECT_EQ(last.lo, Q("11/4"));
  EXPECT_TRUE(last.empty);
  EXPECT_EQ(last.invariants.components, 0u);
}

TEST(SweepTypes, SpuriousCandidatesAreMergedAway) {
  const CellAtlas atlas(graphconfig::testing::single_edge(), 2);
  const CriticalSweep s = sweep_types(atlas, Ray::scalar(2));
  EXPECT_GT(s.criticals.size(), nonspurious_criticals(s).size());
  for (std::size_t k = 0; k + 1 < s.intervals.size(); ++k) {
    EXPECT_EQ(*s.intervals[k].hi, s.intervals[k + 1].lo);
    EXPECT_NE(s.intervals[k].fingerprint, s.intervals[k + 1].fingerprint);
  }
}

TEST(SweepTypes, SameEdgeCellChangesOnlyAtTwoValues) {
  for (const auto& g : {graphconfig::testing::shortcut_triangle(), graphconfig::testing::single_edge()}) {
    const DistanceMatrix delta = node_distances(g);
    const Edge& e = g.edge(0);
    const ParametricPolytope p =
        inequality_system(CellDescriptor({Placement::on_edge(0, 0), Placement::on_edge(0, 1)}), g, delta);
    const VertexEnumerator en(p);
    const RayPolytope along(en, Ray::scalar(2));
    std::set<Rational> changes;
    for (const auto& root : along.roots()) {
      const Rational eps = root.t / 1000;
      const auto before = along.type_at(root.t - eps);
      const auto at = along.type_at(root.t);
      const auto after = along.type_at(root.t + eps);
      if (before != at || at != after) changes.insert(root.t);
    }
    std::set<Rational> expected{delta(e.a, e.b), (delta(e.a, e.b) + e.length) / 2};
    EXPECT_EQ(changes, expected);
    EXPECT_TRUE(along.type_at((delta(e.a, e.b) + e.length) / 2 + Q("1/100")).empty());
  }
}

TEST(ClassCounts, CorollaPairThresholds) {
  const CellAtlas atlas(corolla(3), 2);
  const CriticalSweep s = sweep_types(atlas, Ray::scalar(2));
  std::set<std::size_t> counts;
  for (const auto& iv : s.intervals) {
    if (iv.lo >= Q("3/2") && !iv.empty) counts.insert(iv.invariants.components);
  }
  EXPECT_GE(counts.size(), 3u);
  const CellAtlas atlas4(corolla(4), 2);
  EXPECT_GE(homotopy_invariant_classes(sweep_types(atlas4, Ray::scalar(2)), false), 6u);
}

TEST(ClassCounts, WithinTheCriticalValueBound) {
  for (const auto& [name, g] : graphconfig::testing::test_graphs()) {
    const CellAtlas atlas(g, 2);
    const CriticalSweep s = sweep_types(atlas, Ray::scalar(2));
    const std::size_t m = nonspurious_criticals(s).size();
    EXPECT_LE(isotopy_class_count(s, false), 2 * m + 1) << name;
    EXPECT_LE(isotopy_class_count(s, true), 2 * m + 2) << name;
    EXPECT_EQ(isotopy_class_count(s, true), isotopy_class_count(s, false) + 1) << name;
    EXPECT_LE(BigInt(m), n2_critical_bound(static_cast<long>(g.edge_count()))) << name;
    EXPECT_LE(BigInt(isotopy_class_count(s, true)), n2_isotopy_bound(static_cast<long>(g.edge_count()))) << name;
  }
}

TEST(ClassCounts, ThreeStarSignatures) {
  const CellAtlas atlas(graphconfig::testing::three_star(), 2);
  const CriticalSweep s = sweep_types(atlas, Ray::scalar(2));
  ASSERT_EQ(s.intervals.size(), 3u);
  EXPECT_EQ(s.intervals[0].invariants.betti_mod2, (std::vector<std::size_t>{1, 1, 0}));
  EXPECT_EQ(s.intervals[1].invariants.betti_mod2, (std::vector<std::size_t>{6, 0, 0}));
  EXPECT_TRUE(s.intervals[2].invariants.empty());
  EXPECT_EQ(homotopy_invariant_classes(s, false), 2u);
  EXPECT_EQ(homotopy_invariant_classes(s, true), 3u);
}

// Between consecutive candidates a grid with denominator 2 * lcm never sees a change.
TEST(SweepTypes, CandidatesAreSound) {
  for (const auto& [name, g] : graphconfig::testing::test_graphs()) {
    const CellAtlas atlas(g, 2);
    const Ray ray = Ray::scalar(2);
    const RayFingerprinter fp(atlas, ray);
    const auto cands = fp.candidates();
    BigInt l = 1;
    for (const auto& c : cands) l = lcm_of_denominators(l, c.t);
    const Rational step(BigInt(1), BigInt(2 * l));
    Rational lo = 0;
    for (std::size_t k = 0; k <= cands.size(); ++k) {
      const Rational hi = k < cands.size() ? cands[k].t : lo + 1;
      std::string expected;
      for (Rational t = lo + step; t < hi; t += step) {
        const std::string h = fingerprint_hash(atlas, fp.types_at(t));
        if (expected.empty()) expected = h;
        EXPECT_EQ(h, expected) << name << " t=" << to_string(t);
      }
      lo = hi;
    }
  }
}

TEST(SweepTypes, RandomGraphsWithinBounds) {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 6; ++trial) {
    const MetricGraph g = graphconfig::testing::random_graph(rng, 2 + trial % 3);
    const CellAtlas atlas(g, 2);
    const CriticalSweep s = sweep_types(atlas, Ray::scalar(2));
    const long E = static_cast<long>(g.edge_count());
    EXPECT_LE(BigInt(nonspurious_criticals(s).size()), n2_critical_bound(E));
    EXPECT_LE(BigInt(isotopy_class_count(s, true)), n2_isotopy_bound(E));
    EXPECT_EQ(nonspurious_criticals(s).front(), g.shortest_edge_length());
  }
}

TEST(SweepTypes, GeneralRayScalesTheParameter) {
  const CellAtlas atlas(graphconfig::testing::three_star(), 2);
  const CriticalSweep s = sweep_types(atlas, parse_ray(2, "0;2"));
  EXPECT_EQ(nonspurious_criticals(s), values({"1/2", "1"}));
  const CriticalSweep shifted = sweep_types(atlas, parse_ray(2, "1/2;1"));
  EXPECT_EQ(nonspurious_criticals(shifted), values({"1/2", "3/2"}));
}

TEST(SweepReport, DeterministicAcrossThreadCounts) {
  const CellAtlas atlas(graphconfig::testing::shortcut_triangle(), 2);
  setenv("GRAPHCONFIG_THREADS", "1", 1);
  const std::string one = sweep_report(sweep_types(atlas, Ray::scalar(2)), false).dump();
  setenv("GRAPHCONFIG_THREADS", "3", 1);
  const std::string three = sweep_report(sweep_types(atlas, Ray::scalar(2)), false).dump();
  unsetenv("GRAPHCONFIG_THREADS");
  EXPECT_EQ(one, three);
  const auto doc = nlohmann::json::parse(one);
  EXPECT_EQ(doc["critical_values"], nlohmann::json({"1", "2", "5/2"}));
  EXPECT_EQ(doc["intervals"][0]["interval"], nlohmann::json({"0", "1"}));
  EXPECT_EQ(doc["intervals"].back()["interval"][1], "inf");
}

TEST(SweepReport, Table) {
  const CellAtlas atlas(graphconfig::testing::three_star(), 2);
  const std::string table = sweep_table(sweep_types(atlas, Ray::scalar(2)), false);
  EXPECT_NE(table.find("(0, 1)"), std::string::npos);
  EXPECT_NE(table.find("(2, inf)"), std::string::npos);
  EXPECT_NE(table.find("isotopy classes: 4"), std::string::npos);
}
