#include <gtest/gtest.h>

#include <set>

#include "graphconfig/complex.hpp"
#include "graphconfig/sweep.hpp"
#include "support.hpp"

using namespace graphconfig;
using graphconfig::testing::Q;

namespace {

RestraintVector scalar(std::size_t n, const char* r) { return RestraintVector(n, Q(r)); }

}  // namespace

TEST(BuildComplex, SquareAtZeroIsContractible) {
  const ConfigComplex x = build_complex(graphconfig::testing::single_edge(), 2, scalar(2, "0"));
  EXPECT_EQ(euler_characteristic(x), 1);
  EXPECT_EQ(components(x), 1u);
  EXPECT_EQ(betti_mod2(x), (std::vector<std::size_t>{1, 0, 0}));
  EXPECT_EQ(f_vector(x), (std::vector<std::size_t>{4, 5, 2}));
}

TEST(BuildComplex, SingleEdgeTwoTriangles) {
  const ConfigComplex x = build_complex(graphconfig::testing::single_edge(), 2, scalar(2, "3/4"));
  EXPECT_EQ(f_vector(x), (std::vector<std::size_t>{6, 6, 2}));
  EXPECT_EQ(euler_characteristic(x), 2);
  EXPECT_EQ(components(x), 2u);
}

TEST(BuildComplex, ThreeStarIsACircleForSmallR) {
  const ConfigComplex x = build_complex(graphconfig::testing::three_star(), 2, scalar(2, "1/2"));
  EXPECT_EQ(components(x), 1u);
  EXPECT_EQ(betti_mod2(x), (std::vector<std::size_t>{1, 1, 0}));
  EXPECT_EQ(euler_characteristic(x), 0);
}

TEST(BuildComplex, CorollaBeyondEveryPairIsEmpty) {
  const ConfigComplex x = build_complex(corolla(2), 2, scalar(2, "3"));
  EXPECT_TRUE(x.empty());
  EXPECT_EQ(f_vector(x), (std::vector<std::size_t>{0, 0, 0}));
  EXPECT_EQ(components(x), 0u);
  EXPECT_EQ(euler_characteristic(x), 0);
  EXPECT_TRUE(betti_mod2(x).empty());
}

// Ordered pairs of legs i != j with L_i + L_j >= r each give one contractible component.
TEST(BuildComplex, CorollaComponentsCountLegPairs) {
  const ConfigComplex x4 = build_complex(corolla(4), 2, scalar(2, "12/5"));
  EXPECT_EQ(components(x4), 6u);
  const ConfigComplex x3 = build_complex(corolla(3), 2, scalar(2, "2"));
  EXPECT_EQ(betti_mod2(x3), (std::vector<std::size_t>{6, 0, 0}));
}

TEST(BuildComplex, ConnectedAtZero) {
  for (const auto& [name, g] : graphconfig::testing::test_graphs()) {
    EXPECT_EQ(components(build_complex(g, 2, scalar(2, "0"))), 1u) << name;
  }
}

TEST(BuildComplex, ThreePointsOnAnEdge) {
  // Γ³ of an interval is a cube; at r = 0 it is contractible.
  const ConfigComplex x = build_complex(graphconfig::testing::single_edge(), 3, scalar(3, "0"));
  EXPECT_EQ(betti_mod2(x), (std::vector<std::size_t>{1, 0, 0, 0}));
  // Three points pairwise 1/4 apart on a unit interval: one component per order.
  const ConfigComplex y = build_complex(graphconfig::testing::single_edge(), 3, scalar(3, "1/4"));
  EXPECT_EQ(betti_mod2(y), (std::vector<std::size_t>{6, 0, 0, 0}));
}

TEST(BuildComplex, EulerIsAlternatingBettiSum) {
  for (const auto& [name, g] : graphconfig::testing::test_graphs()) {
    const CellAtlas atlas(g, 2);
    for (const char* r : {"0", "1/3", "1", "7/5", "2", "5/2"}) {
      const ConfigComplex x = build_complex(atlas, scalar(2, r));
      long alt = 0;
      const auto b = betti_mod2(x);
      for (std::size_t k = 0; k < b.size(); ++k) alt += (k % 2 == 0 ? 1 : -1) * static_cast<long>(b[k]);
      EXPECT_EQ(alt, euler_characteristic(x)) << name << " r=" << r;
      if (!x.empty()) EXPECT_EQ(b[0], components(x)) << name << " r=" << r;
      for (const auto& c : x.cells()) {
        std::set<std::size_t> unique(c.boundary.begin(), c.boundary.end());
        EXPECT_EQ(unique.size(), c.boundary.size());
        if (c.dimension == 1) EXPECT_EQ(c.boundary.size(), 2u) << c.name;
        if (c.dimension == 2) EXPECT_GE(c.boundary.size(), 3u) << c.name;
      }
    }
  }
}

// Node configurations only: vertices inside cells (e.g. where E3 cuts the
// same-edge triangle) appear as r grows.
TEST(BuildComplex, NodeConfigurationsShrinkAsRGrows) {
  for (const auto& [name, g] : graphconfig::testing::test_graphs()) {
    const CellAtlas atlas(g, 2);
    const char* rs[] = {"0", "1/2", "1", "3/2", "2"};
    for (std::size_t k = 0; k + 1 < std::size(rs); ++k) {
      std::set<std::string> low;
      const ConfigComplex before = build_complex(atlas, scalar(2, rs[k]));
      const ConfigComplex after = build_complex(atlas, scalar(2, rs[k + 1]));
      for (const auto& c : before.cells()) {
        if (c.key.cell.dimension() == 0) low.insert(c.name);
      }
      for (const auto& c : after.cells()) {
        if (c.key.cell.dimension() == 0) EXPECT_TRUE(low.count(c.name)) << name << " " << c.name;
      }
    }
  }
}

// r = 0 admits the diagonal, so it is not part of the first interval.
TEST(BuildComplex, ConstantBelowFirstCandidate) {
  for (const auto& [name, g] : graphconfig::testing::test_graphs()) {
    const CellAtlas atlas(g, 2);
    const auto candidates = critical_candidates(atlas, Ray::scalar(2));
    ASSERT_FALSE(candidates.empty());
    const Rational first = candidates.front().t;
    const ConfigComplex low = build_complex(atlas, RestraintVector(2, first / 7));
    const ConfigComplex high = build_complex(atlas, RestraintVector(2, first * 6 / 7));
    EXPECT_EQ(f_vector(low), f_vector(high)) << name;
    EXPECT_EQ(invariants(low), invariants(high)) << name;
  }
}

TEST(ComplexReport, KeysAndDeterminism) {
  const CellAtlas atlas(graphconfig::testing::three_star(), 2);
  const auto a = complex_report(build_complex(atlas, scalar(2, "1/2")));
  const auto b = complex_report(build_complex(atlas, scalar(2, "1/2")));
  EXPECT_EQ(a.dump(), b.dump());
  for (const char* key : {"f_vector", "components", "euler", "betti_mod2", "cells"}) EXPECT_TRUE(a.contains(key));
  EXPECT_EQ(a["cells"].size(), 24u + 36u + 12u);
}
