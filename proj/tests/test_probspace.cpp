#include <gtest/gtest.h>

#include "cdst/oracle.hpp"
#include "cdst/probspace.hpp"
#include "support.hpp"

using namespace cdst;
using cdst::testing::q;
using cdst::testing::set_of;

TEST(ProbabilitySpace, Validation) {
  EXPECT_NO_THROW(ProbabilitySpace(3, {set_of({0, 1}), set_of({2})}, {q("1/3"), q("2/3")}));
  EXPECT_NO_THROW(ProbabilitySpace(2, {set_of({0}), set_of({1})}, {0, 1}));
  EXPECT_THROW(ProbabilitySpace(3, {set_of({0, 1}), set_of({1, 2})}, {q("1/2"), q("1/2")}), InputError);
  EXPECT_THROW(ProbabilitySpace(3, {set_of({0, 1})}, {1}), InputError);
  EXPECT_THROW(ProbabilitySpace(2, {set_of({0}), set_of({1})}, {q("1/2"), q("1/4")}), InputError);
  EXPECT_THROW(ProbabilitySpace(2, {set_of({0}), set_of({1})}, {q("3/2"), q("-1/2")}), InputError);
  EXPECT_THROW(ProbabilitySpace(2, {set_of({0}), IndexSet(), set_of({1})}, {q("1/2"), 0, q("1/2")}), InputError);
  EXPECT_THROW(ProbabilitySpace(2, {set_of({0, 2})}, {1}), InputError);
  EXPECT_THROW(ProbabilitySpace(1, {set_of({0})}, {1}, {"a", "b"}), InputError);
}

TEST(ProbabilitySpace, InnerAndOuterOnASmallSpace) {
  // blocks {0,1} (1/2), {2} (1/3), {3} (1/6)
  const ProbabilitySpace sp(4, {set_of({0, 1}), set_of({2}), set_of({3})}, {q("1/2"), q("1/3"), q("1/6")});
  EXPECT_EQ(sp.iota(set_of({0, 2})), set_of({2}));
  EXPECT_EQ(sp.gamma(set_of({0, 2})), set_of({0, 1, 2}));
  EXPECT_EQ(sp.inner_measure(set_of({0, 2})), q("1/3"));
  EXPECT_EQ(sp.outer_measure(set_of({0, 2})), q("5/6"));
  EXPECT_EQ(sp.inner_measure(IndexSet()), 0);
  EXPECT_EQ(sp.outer_measure(sp.carrier()), 1);
  EXPECT_TRUE(sp.in_algebra(set_of({0, 1, 3})));
  EXPECT_FALSE(sp.in_algebra(set_of({0})));
  EXPECT_THROW(sp.mu(set_of({0})), InputError);
}

TEST(ProbabilitySpace, IotaAndGammaAreTheAdjoints) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const std::size_t n = 1 + seed % 5;
    const auto sp = oracle::random_partition_space(seed, n);
    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t y = 0; y < count; ++y) {
      const auto Y = IndexSet::from_mask(y);
      const auto lo = sp.iota(Y);
      const auto hi = sp.gamma(Y);
      EXPECT_TRUE(sp.in_algebra(lo));
      EXPECT_TRUE(sp.in_algebra(hi));
      for (std::uint64_t e = 0; e < count; ++e) {
        const auto E = IndexSet::from_mask(e);
        if (!sp.in_algebra(E)) continue;
        EXPECT_EQ(E.subset_of(Y), E.subset_of(lo));
        EXPECT_EQ(Y.subset_of(E), hi.subset_of(E));
      }
    }
  }
}

TEST(ProbabilitySpace, MeasuresMatchBruteForceOverTheAlgebra) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const std::size_t n = 1 + seed % 5;
    const auto sp = oracle::random_partition_space(seed, n);
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y) {
      const auto Y = IndexSet::from_mask(y);
      EXPECT_EQ(sp.inner_measure(Y), oracle::brute_inner_measure(sp, Y));
      EXPECT_EQ(sp.outer_measure(Y), oracle::brute_outer_measure(sp, Y));
      EXPECT_EQ(sp.outer_measure(Y), 1 - sp.inner_measure(sp.carrier() - Y));
    }
  }
}

TEST(ProbabilitySpace, InnerMeasureIsABeliefFunction) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const std::size_t n = 1 + seed % 4;
    const auto sp = oracle::random_partition_space(seed, n);
    const auto inner = oracle::tabulate(n, [&](const IndexSet& y) { return sp.inner_measure(y); });
    const auto outer = oracle::tabulate(n, [&](const IndexSet& y) { return sp.outer_measure(y); });
    EXPECT_TRUE(oracle::check_belief_axioms_set(n, inner, 3).passed());
    EXPECT_TRUE(oracle::check_plausibility_axioms_set(n, outer, 3).passed());
    // its Möbius inverse is a mass function concentrated on the blocks
    const auto m = mass_from_bel_set(n, inner);
    for (Subset x = 1; x < m.subset_count(); ++x) {
      bool is_block = false;
      for (std::size_t b = 0; b < sp.blocks().size(); ++b) {
        if (sp.blocks()[b].to_mask() == x) {
          is_block = true;
          EXPECT_EQ(m[x], sp.measure()[b]);
        }
      }
      if (!is_block) EXPECT_EQ(m[x], 0);
    }
  }
}

TEST(ConceptualProbabilitySpace, Total) {
  ConceptualProbabilitySpace<int> sp{{1, 2}, {q("1/4"), q("3/4")}};
  EXPECT_EQ(sp.total(), 1);
}

TEST(ProbabilitySpace, TwoBlockExamples) {
  // carrier 1,2,3 as indices 0,1,2; blocks {1,2}, {3} with 1/2 each
  const ProbabilitySpace sp(3, {set_of({0, 1}), set_of({2})}, {q("1/2"), q("1/2")});
  EXPECT_EQ(sp.iota(set_of({0, 1})), set_of({0, 1}));
  EXPECT_EQ(sp.iota(set_of({0, 2})), set_of({2}));
  EXPECT_EQ(sp.iota(IndexSet()), IndexSet());
  EXPECT_EQ(sp.gamma(set_of({0})), set_of({0, 1}));
  EXPECT_EQ(sp.gamma(sp.carrier()), sp.carrier());
  EXPECT_EQ(sp.gamma(set_of({2})), set_of({2}));
  EXPECT_EQ(sp.inner_measure(set_of({0, 2})), q("1/2"));
  EXPECT_EQ(sp.outer_measure(set_of({0, 2})), 1);
  EXPECT_EQ(sp.inner_measure(IndexSet()), 0);
  EXPECT_EQ(sp.outer_measure(IndexSet()), 0);
  for (const auto& y : {set_of({0, 1}), set_of({2}), sp.carrier()}) {
    EXPECT_EQ(sp.inner_measure(y), sp.mu(y));
    EXPECT_EQ(sp.outer_measure(y), sp.mu(y));
  }
}
