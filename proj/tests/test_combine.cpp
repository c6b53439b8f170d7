#include <gtest/gtest.h>

#include "cdst/combine.hpp"
#include "cdst/oracle.hpp"
#include "support.hpp"

using namespace cdst;
using cdst::testing::by_extent;
using cdst::testing::mass_on;
using cdst::testing::q;

namespace {

// Objects and attributes both S = {0..n-1}, g I m iff g != m: every subset of
// S is an extent, so the concept lattice is the powerset lattice.
FormalContext powerset_context(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
  std::vector<std::pair<std::size_t, std::size_t>> inc;
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t m = 0; m < n; ++m) {
      if (g != m) inc.emplace_back(g, m);
    }
  }
  return FormalContext(names, names, inc);
}

MassFunction lift(const SetMassFunction& m, const std::shared_ptr<const ConceptLattice>& lat) {
  std::vector<Rational> v(lat->size());
  for (Subset x = 0; x < m.subset_count(); ++x) v[lat->find_extent(IndexSet::from_mask(x)).value()] = m[x];
  return MassFunction(lat, v);
}

}  // namespace

TEST(Combine, MoviesCaseOne) {
  const auto lat = enumerate_concepts(cdst::testing::movies_context());
  const auto m1 = mass_on(lat, {{{"a"}, "0.9"}, {{"a", "b", "c"}, "0.1"}});
  const auto m2 = mass_on(lat, {{{"b"}, "0.9"}, {{"a", "b", "c"}, "0.1"}});
  const auto r = combine(m1, m2);
  EXPECT_EQ(r.conflict, q("81/100"));
  EXPECT_EQ(r.result[by_extent(*lat, {"a"})], q("9/19"));
  EXPECT_EQ(r.result[by_extent(*lat, {"b"})], q("9/19"));
  EXPECT_EQ(r.result[lat->top()], q("1/19"));
  EXPECT_EQ(r.result[by_extent(*lat, {"c"})], 0);
}

TEST(Combine, MoviesCaseTwo) {
  const auto lat = enumerate_concepts(cdst::testing::movies_context());
  const auto m1 = mass_on(lat, {{{"a"}, "0.9"}, {{"c"}, "0.1"}});
  const auto m2 = mass_on(lat, {{{"c"}, "0.1"}, {{"b"}, "0.9"}});
  const auto r = combine(m1, m2);
  EXPECT_EQ(r.conflict, q("99/100"));
  EXPECT_EQ(r.result[by_extent(*lat, {"c"})], 1);
}

TEST(Combine, MoviesCaseThreeBottomCarriesMass) {
  const auto lat = enumerate_concepts(cdst::testing::movies3_context());
  const auto m1 = mass_on(lat, {{{"a", "c"}, "0.9"}, {{"a", "b", "c"}, "0.1"}});
  const auto m2 = mass_on(lat, {{{"b", "c"}, "0.9"}, {{"a", "b", "c"}, "0.1"}});
  const auto r = combine(m1, m2);
  EXPECT_EQ(r.conflict, 0);
  EXPECT_EQ(r.result[lat->bottom()], q("81/100"));
  EXPECT_EQ(r.result[by_extent(*lat, {"a", "c"})], q("9/100"));
  EXPECT_EQ(r.result[by_extent(*lat, {"b", "c"})], q("9/100"));
  EXPECT_EQ(r.result[lat->top()], q("1/100"));
}

TEST(Combine, MusicFold) {
  const auto lat = enumerate_concepts(cdst::testing::music_context());
  const auto m1 = mass_on(lat, {{{"a"}, "0.2"}, {{"a", "b", "c"}, "0.8"}});
  const auto m2 = mass_on(lat, {{{"a", "b"}, "0.6"}, {{"a", "b", "c"}, "0.4"}});
  const auto m3 = mass_on(lat, {{{"b"}, "0.2"}, {{"c"}, "0.6"}, {{"a", "b", "c"}, "0.2"}});

  const auto m12 = combine(m1, m2);
  EXPECT_EQ(m12.conflict, 0);
  EXPECT_EQ(m12.result[by_extent(*lat, {"a"})], q("1/5"));
  EXPECT_EQ(m12.result[by_extent(*lat, {"a", "b"})], q("12/25"));
  EXPECT_EQ(m12.result[lat->top()], q("8/25"));

  const std::vector<MassFunction> all{m1, m2, m3};
  const auto r = combine_many(all);
  EXPECT_EQ(r.conflict, q("56/125"));
  EXPECT_EQ(r.result[by_extent(*lat, {"a"})], q("5/69"));
  EXPECT_EQ(r.result[by_extent(*lat, {"b"})], q("20/69"));
  EXPECT_EQ(r.result[by_extent(*lat, {"c"})], q("24/69"));
  EXPECT_EQ(r.result[by_extent(*lat, {"a", "b"})], q("12/69"));
  EXPECT_EQ(r.result[lat->top()], q("8/69"));
  EXPECT_EQ(bel(r.result, by_extent(*lat, {"a", "b"})), q("37/69"));
  EXPECT_EQ(bel(r.result, by_extent(*lat, {"b", "c"})), q("44/69"));
  EXPECT_EQ(pl(r.result, by_extent(*lat, {"b", "c"})), q("64/69"));
}

TEST(Combine, TotalConflictIsAnError) {
  const auto lat = enumerate_concepts(cdst::testing::movies_context());
  const auto a = mass_on(lat, {{{"a"}, "1"}});
  const auto b = mass_on(lat, {{{"b"}, "1"}});
  EXPECT_THROW(combine(a, b), TotalConflictError);
  const std::vector<MassFunction> chain{MassFunction::vacuous(lat), a, b};
  try {
    combine_many(chain);
    FAIL() << "expected total conflict";
  } catch (const TotalConflictError& e) {
    EXPECT_EQ(e.step(), 2u);
  }
  EXPECT_THROW(combine_many(std::vector<MassFunction>{}), InputError);
}

TEST(Combine, RejectsDifferentLattices) {
  const auto l1 = enumerate_concepts(cdst::testing::movies_context());
  const auto l2 = enumerate_concepts(cdst::testing::movies_context());
  EXPECT_THROW(combine(MassFunction::vacuous(l1), MassFunction::vacuous(l2)), InputError);
}

TEST(Combine, AlgebraicLaws) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const auto lat = oracle::random_lattice(seed, 10);
    const auto a = oracle::random_mass(3 * seed, lat);
    const auto b = oracle::random_mass(3 * seed + 1, lat);
    const auto c = oracle::random_mass(3 * seed + 2, lat);
    const auto vac = MassFunction::vacuous(lat);
    EXPECT_EQ(combine(a, vac).result, a);
    EXPECT_EQ(combine(vac, a).result, a);
    std::optional<MassFunction> ab, ba;
    try {
      ab = combine(a, b).result;
      ba = combine(b, a).result;
    } catch (const TotalConflictError&) {
      EXPECT_THROW(combine(b, a), TotalConflictError);
      continue;
    }
    EXPECT_EQ(*ab, *ba);
    for (ConceptIndex x : ab->support()) EXPECT_FALSE((*lat)[x].extent.empty());
    auto attempt = [](auto&& f) -> std::optional<MassFunction> {
      try {
        return f();
      } catch (const TotalConflictError&) {
        return std::nullopt;
      }
    };
    const auto left = attempt([&] { return combine(*ab, c).result; });
    const auto right = attempt([&] { return combine(a, combine(b, c).result).result; });
    ASSERT_EQ(left.has_value(), right.has_value()) << "seed " << seed;
    if (left) EXPECT_EQ(*left, *right) << "seed " << seed;
  }
}

TEST(Combine, FocusedEvidenceStaysBelowItsFocus) {
  // If m puts all mass at or below c, so does m ⊕ m'.
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    const auto lat = oracle::random_lattice(seed, 10, true);
    const ConceptIndex c = seed % lat->size();
    if ((*lat)[c].extent.empty()) continue;
    std::vector<Rational> v(lat->size());
    v[c] = 1;
    const MassFunction focused(lat, v);
    const auto other = oracle::random_mass(seed + 99, lat);
    try {
      const auto r = combine(focused, other).result;
      for (ConceptIndex x : r.support()) EXPECT_TRUE(lat->leq(x, c));
    } catch (const TotalConflictError&) {
    }
  }
}

TEST(Combine, AgreesWithSetRuleOnPowersetLattice) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto lat = enumerate_concepts(powerset_context(n));
    ASSERT_EQ(lat->size(), std::size_t{1} << n);
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      const auto a = oracle::random_set_mass(seed, n, 8);
      const auto b = oracle::random_set_mass(seed + 500, n, 8);
      std::optional<SetCombinationReport> sets;
      try {
        sets = combine_set(a, b);
      } catch (const TotalConflictError&) {
        EXPECT_THROW(combine(lift(a, lat), lift(b, lat)), TotalConflictError);
        continue;
      }
      const auto concepts = combine(lift(a, lat), lift(b, lat));
      EXPECT_EQ(concepts.result, lift(sets->result, lat));
      EXPECT_EQ(concepts.conflict, sets->conflict);
    }
  }
}
