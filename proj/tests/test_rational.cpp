#include <gtest/gtest.h>

#include "cdst/error.hpp"
#include "cdst/format.hpp"
#include "cdst/index_set.hpp"
#include "cdst/limits.hpp"
#include "cdst/rational.hpp"

#include <sstream>

using cdst::IndexSet;
using cdst::Rational;

TEST(Rational, ParsesFractionsIntegersAndDecimalsExactly) {
  EXPECT_EQ(cdst::parse_rational("1/5"), Rational(1, 5));
  EXPECT_EQ(cdst::parse_rational("0.2"), Rational(1, 5));
  EXPECT_EQ(cdst::parse_rational(" 3 "), Rational(3));
  EXPECT_EQ(cdst::parse_rational("-0.25"), Rational(-1, 4));
  EXPECT_EQ(cdst::parse_rational("2e-1"), Rational(1, 5));
  EXPECT_EQ(cdst::parse_rational("1.5E2"), Rational(150));
  EXPECT_EQ(cdst::parse_rational("6/8"), Rational(3, 4));
  EXPECT_EQ(cdst::parse_rational(".5"), Rational(1, 2));
}

TEST(Rational, RejectsMalformedText) {
  for (const char* bad : {"", "abc", "1/0", "1/", "/2", "1.2.3", "0x10", "1e", "--1"}) {
    EXPECT_THROW(cdst::parse_rational(bad), cdst::ParseError) << bad;
  }
}

TEST(Rational, RoundsHalfAwayFromZero) {
  EXPECT_EQ(cdst::to_fixed(Rational(1, 19), 2), "0.05");
  EXPECT_EQ(cdst::to_fixed(Rational(1, 8), 2), "0.13");
  EXPECT_EQ(cdst::to_fixed(Rational(-1, 8), 2), "-0.13");
  EXPECT_EQ(cdst::to_fixed(Rational(5, 2), 0), "3");
  EXPECT_EQ(cdst::to_fixed(Rational(-5, 2), 0), "-3");
  EXPECT_EQ(cdst::to_fixed(Rational(1), 2), "1.00");
  EXPECT_EQ(cdst::to_fixed(Rational(37, 69), 2), "0.54");
  EXPECT_EQ(cdst::to_fixed(Rational(1, 200), 2), "0.01");
  EXPECT_EQ(cdst::round_half_away(Rational(64, 69), 2), Rational(93, 100));
}

TEST(Rational, ExactRendering) {
  EXPECT_EQ(cdst::to_exact(Rational(9, 19)), "9/19");
  EXPECT_EQ(cdst::to_exact(Rational(4)), "4");
  EXPECT_EQ(cdst::to_exact(Rational(-2, 6)), "-1/3");
  for (const char* text : {"5/69", "0", "-7/3", "12"}) {
    EXPECT_EQ(cdst::to_exact(cdst::parse_rational(text)), text);
  }
}

TEST(IndexSet, BasicAlgebra) {
  IndexSet a = IndexSet::from_mask(0b0110);
  IndexSet b = IndexSet::from_mask(0b0011);
  EXPECT_EQ((a & b), IndexSet::from_mask(0b0010));
  EXPECT_EQ((a | b), IndexSet::from_mask(0b0111));
  EXPECT_EQ((a - b), IndexSet::from_mask(0b0100));
  EXPECT_TRUE(IndexSet::from_mask(0b0010).subset_of(a));
  EXPECT_FALSE(a.subset_of(b));
  EXPECT_TRUE(a.intersects(b));
  EXPECT_EQ(a.size(), 2u);
  EXPECT_EQ(a.bound(), 3u);
  EXPECT_EQ(a.to_mask(), 0b0110u);
  EXPECT_EQ(IndexSet::full(3), IndexSet::from_mask(0b111));
  EXPECT_TRUE(IndexSet().empty());
  EXPECT_EQ(IndexSet().bound(), 0u);
}

TEST(IndexSet, LexicographicOrderComparesSortedElements) {
  // {0,2} < {1}: first elements 0 < 1
  EXPECT_TRUE(lexicographic_less(IndexSet::from_mask(0b101), IndexSet::from_mask(0b010)));
  // {0} < {0,1}: prefix
  EXPECT_TRUE(lexicographic_less(IndexSet::from_mask(0b001), IndexSet::from_mask(0b011)));
  EXPECT_FALSE(lexicographic_less(IndexSet::from_mask(0b011), IndexSet::from_mask(0b011)));
}

TEST(IndexSet, FormatsWithNames) {
  EXPECT_EQ(cdst::format_set(IndexSet::from_mask(0b101), {"a", "b", "c"}), "{a,c}");
  EXPECT_EQ(cdst::format_set(IndexSet(), {"a"}), "{}");
}

TEST(IndexSet, CapacityIsEnforced) {
  EXPECT_NO_THROW(IndexSet::check_index_bound(IndexSet::kCapacity));
  EXPECT_THROW(IndexSet::check_index_bound(IndexSet::kCapacity + 1), cdst::CapacityError);
}

TEST(Limits, RequireWithin) {
  EXPECT_NO_THROW(cdst::require_within(3, 3, "x"));
  EXPECT_THROW(cdst::require_within(4, 3, "x"), cdst::CapacityError);
}

TEST(Format, TextRightAlignsNumericColumns) {
  cdst::Table t{{"name", "value"}, {false, true}, {}};
  t.add_row({"a", "0.5"});
  t.add_row({"long", "10.25"});
  std::ostringstream out;
  cdst::write_text(out, t);
  EXPECT_EQ(out.str(), "name  value\na       0.5\nlong  10.25\n");
  EXPECT_THROW(t.add_row({"only one"}), cdst::Error);
}

TEST(Format, CsvQuotesFieldsWithCommas) {
  cdst::Table t{{"extent", "m"}, {}, {}};
  t.add_row({"{a,b}", "1/2"});
  std::ostringstream out;
  cdst::write_csv(out, t);
  EXPECT_EQ(out.str(), "extent,m\n\"{a,b}\",1/2\n");
}

TEST(Format, NumberStyle) {
  EXPECT_EQ((cdst::NumberStyle{true, 2})(Rational(9, 19)), "9/19");
  EXPECT_EQ((cdst::NumberStyle{false, 3})(Rational(9, 19)), "0.474");
}
