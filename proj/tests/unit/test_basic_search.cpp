#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "helpers.hpp"
#include "plumbhf/oracle.hpp"

using namespace plumbhf;
using plumbhf::testing::cv;
using plumbhf::testing::fixture;

// K0 never meets the lower bound m(v), so it is good through the first
// clause: the walk ends in the box (at -K0 after 12 steps).
TEST(BasicSearch, Y2TorsionWalkEndsInTheBox) {
  const Lattice y2(fixture("y2"));
  const auto walk = run_walk(y2, cv({1, 0, -1, -6, 0}));
  EXPECT_EQ(walk.kind, WalkKind::TerminatedInBox);
  EXPECT_EQ(walk.final_vector, cv({-1, 0, 1, 6, 0}));
  EXPECT_EQ(walk.step, 12u);
  EXPECT_TRUE(is_good_torsion(y2, cv({1, 0, -1, -6, 0})));
}

TEST(BasicSearch, PeriodicWalkFromTheLowerBound) {
  // S^1 x S^2: K = 0 meets m(v) = 0 and shifting by 2PD[v] = 0 repeats at once
  const Lattice l(fixture("s1xs2"));
  const auto walk = run_walk(l, cv({0}));
  EXPECT_EQ(walk.kind, WalkKind::Periodic);
  EXPECT_EQ(walk.period_length, 1u);
  EXPECT_TRUE(is_good_torsion(l, cv({0})));
}

TEST(BasicSearch, WalkOverflowAndTermination) {
  const Lattice s3(fixture("s3"));
  const auto one = run_walk(s3, cv({1}));
  EXPECT_EQ(one.kind, WalkKind::TerminatedInBox);
  EXPECT_EQ(one.final_vector, cv({-1}));
  const auto over = run_walk(s3, cv({3}));
  EXPECT_EQ(over.kind, WalkKind::Overflow);
  const Lattice chain(parse_plumbing(R"({"vertices":[{"id":"a","weight":-2},{"id":"b","weight":-2}],"edges":[["a","b"]]})"));
  const auto walk = run_walk(chain, cv({0, 0}));
  EXPECT_EQ(walk.kind, WalkKind::TerminatedInBox);
  EXPECT_EQ(walk.step, 0u);
}

TEST(BasicSearch, WalkRejectsVectorsBelowTheBox) {
  const Lattice s3(fixture("s3"));
  EXPECT_THROW(run_walk(s3, cv({-3})), std::invalid_argument);
  EXPECT_THROW(run_walk(s3, cv({1, 1})), DimensionMismatch);
}

TEST(BasicSearch, Boxes) {
  const Lattice y2(fixture("y2"));
  EXPECT_TRUE(in_torsion_box(y2, cv({1, 0, -1, -6, 0})));
  EXPECT_FALSE(in_strict_box(y2, cv({-1, 0, -1, -6, 0})));
  EXPECT_TRUE(in_strict_box(y2, cv({1, 0, -1, -4, 0})));
  EXPECT_EQ(torsion_box_size(Lattice(fixture("s3"))), 2u);
}

TEST(BasicSearch, Y2BasicVectors) {
  const Lattice y2(fixture("y2"));
  EXPECT_EQ(enumerate_basic_torsion(y2), (std::vector<CharVector>{cv({1, 0, -1, -6, 0})}));
  auto nontorsion = enumerate_basic_nontorsion(y2);
  std::sort(nontorsion.begin(), nontorsion.end());
  EXPECT_EQ(nontorsion, (std::vector<CharVector>{cv({1, 0, -1, -8, 0}), cv({1, 0, -1, -4, 0})}));
}

TEST(BasicSearch, YFamilyBasicVectors) {
  for (std::int64_t n = 1; n <= 4; ++n) {
    const Lattice l(fixture("y" + std::to_string(n)));
    std::set<CharVector> expected;
    for (std::int64_t i = -n + 1; i <= n - 1; ++i) {
      IntVector k(l.size(), 0);
      k[0] = 1;
      k[2] = -1;
      k[3] = -2 * n - 2 + 2 * i;
      expected.insert(cv(k));
    }
    std::set<CharVector> found;
    for (const auto& [sector, vectors] : basic_vectors_by_sector(l, {})) found.insert(vectors.begin(), vectors.end());
    EXPECT_EQ(found, expected) << "n = " << n;
    EXPECT_EQ(enumerate_basic_torsion(l).size(), 1u);
  }
}

TEST(BasicSearch, TrivialGraphs) {
  EXPECT_EQ(enumerate_basic_torsion(Lattice(fixture("s1xs2"))), (std::vector<CharVector>{cv({0})}));
  EXPECT_TRUE(enumerate_basic_nontorsion(Lattice(fixture("s1xs2"))).empty());
  EXPECT_EQ(enumerate_basic_torsion(Lattice(fixture("s3"))), (std::vector<CharVector>{cv({1})}));
  EXPECT_TRUE(enumerate_basic_nontorsion(Lattice(fixture("s3"))).empty());
}

TEST(BasicSearch, Fig2BasicVectors) {
  const Lattice g(fixture("fig2"));
  auto torsion = enumerate_basic_torsion(g);
  std::sort(torsion.begin(), torsion.end());
  EXPECT_EQ(torsion, (std::vector<CharVector>{cv({1, 0, -1, -5, 2}), cv({1, 0, -1, -3, -10})}));
  std::set<CharVector> expected;
  for (std::int64_t i = -15; i <= 21; ++i)
    if (i != 0) expected.insert(cv({1, 0, -1, -3, -10 + 2 * i}));
  for (std::int64_t j = -21; j <= 15; ++j)
    if (j != 0) expected.insert(cv({1, 0, -1, -5, 2 + 2 * j}));
  const auto nontorsion = enumerate_basic_nontorsion(g);
  EXPECT_EQ(nontorsion.size(), 72u);
  EXPECT_EQ(std::set<CharVector>(nontorsion.begin(), nontorsion.end()), expected);
}

TEST(BasicSearch, BoxCapIsEnforced) {
  const Lattice g(fixture("fig2"));
  SearchOptions options;
  options.box_cap = 10;
  EXPECT_THROW(enumerate_basic_torsion(g, options), StateCountExceeded);
}

TEST(BasicSearch, VisitCap) {
  const Lattice y2(fixture("y2"));
  WalkOptions options;
  options.visit_cap = 1;
  EXPECT_THROW(run_walk(y2, cv({1, 0, -1, -6, 0}), options), VisitCapExceeded);
}

// The walk verdict does not depend on the order in which vertices are tried.
TEST(BasicSearch, GoodVectorsIndependentOfOrdering) {
  std::mt19937_64 rng(3);
  std::vector<Lattice> lattices{Lattice(fixture("y2")), Lattice(fixture("y3"))};
  for (std::uint64_t seed = 1; seed <= 20; ++seed) lattices.emplace_back(random_tree(seed));
  for (const auto& l : lattices) {
    std::vector<std::size_t> order(l.size());
    std::iota(order.begin(), order.end(), 0);
    const auto reference = enumerate_basic_torsion(l);
    for (int trial = 0; trial < 5; ++trial) {
      std::shuffle(order.begin(), order.end(), rng);
      std::vector<CharVector> found;
      IntVector lo(l.size()), hi(l.size());
      for (std::size_t v = 0; v < l.size(); ++v) {
        lo[v] = l.weight(v);
        hi[v] = -l.weight(v);
      }
      for_each_in_box(l, lo, hi, [&](const CharVector& k) {
        if (l.is_torsion(k) && is_good_torsion(l, k, order)) found.push_back(k);
      });
      EXPECT_EQ(found, reference) << l.graph().name().value_or("?");
    }
  }
}

TEST(BasicSearch, ConjugationMapsBasicNonTorsionVectors) {
  // -B is not in the box in general; compare sectors of the basic sets instead
  const Lattice g(fixture("fig2"));
  std::multiset<std::int64_t> labels;
  for (const auto& k : enumerate_basic_nontorsion(g)) labels.insert(*g.label_of(k));
  for (auto label : labels) EXPECT_EQ(labels.count(label), labels.count(-label));
}
