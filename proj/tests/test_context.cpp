#include <gtest/gtest.h>

#include "cdst/context.hpp"
#include "cdst/oracle.hpp"
#include "support.hpp"

using namespace cdst;
using cdst::testing::music_context;
using cdst::testing::set_of;

namespace {

// music context, objects a b c, attributes w x y z
const char* kMusicCxt =
    "B\n"
    "\n"
    "3\n"
    "4\n"
    "\n"
    "a\nb\nc\n"
    "w\nx\ny\nz\n"
    "XX..\n"
    ".XX.\n"
    "..XX\n";

std::size_t error_line(const std::string& text) {
  try {
    parse_cxt(text);
  } catch (const ParseError& e) {
    return e.line().value_or(0);
  }
  ADD_FAILURE() << "no parse error";
  return 0;
}

}  // namespace

TEST(Context, DerivationsOnMusic) {
  const auto ctx = music_context();
  EXPECT_EQ(ctx.up(set_of({0})), set_of({0, 1}));        // {a} -> {w,x}
  EXPECT_EQ(ctx.up(set_of({0, 1})), set_of({1}));        // {a,b} -> {x}
  EXPECT_EQ(ctx.up(IndexSet()), ctx.all_attributes());
  EXPECT_EQ(ctx.down(set_of({2})), set_of({1, 2}));      // {y} -> {b,c}
  EXPECT_EQ(ctx.down(IndexSet()), ctx.all_objects());
  EXPECT_TRUE(ctx.down(ctx.all_attributes()).empty());
}

TEST(Context, RejectsDuplicateNamesAndBadIndices) {
  EXPECT_THROW(FormalContext({"a", "a"}, {"x"}, {}), InputError);
  EXPECT_THROW(FormalContext({"a"}, {"x", "x"}, {}), InputError);
  EXPECT_THROW(FormalContext({"a"}, {"x"}, {{1, 0}}), InputError);
  EXPECT_THROW(FormalContext({"a"}, {"x"}, {{0, 1}}), InputError);
}

TEST(Context, ParsesMusicCxt) {
  const auto ctx = parse_cxt(kMusicCxt);
  EXPECT_EQ(ctx, music_context());
  EXPECT_EQ(ctx.incidence().size(), 6u);
}

TEST(Context, ParsesEmptyCxt) {
  const auto ctx = parse_cxt("B\n\n0\n0\n\n");
  EXPECT_EQ(ctx.object_count(), 0u);
  EXPECT_EQ(ctx.attribute_count(), 0u);
}

TEST(Context, CxtErrorsNameTheLine) {
  // third row is one column short
  EXPECT_EQ(error_line("B\n\n2\n4\n\na\nb\nw\nx\ny\nz\nXX..\n.XX\n"), 13u);
  EXPECT_EQ(error_line("A\n\n0\n0\n\n"), 1u);
  EXPECT_EQ(error_line("B\nx\n0\n0\n\n"), 2u);
  EXPECT_EQ(error_line("B\n\nthree\n0\n\n"), 3u);
  EXPECT_EQ(error_line("B\n\n1\n1\n\na\nx\nY\n"), 8u);
  EXPECT_EQ(error_line("B\n\n1\n1\n\na\nx\nX\nextra\n"), 9u);
  EXPECT_EQ(error_line("B\n\n2\n1\n\na\n"), 7u);
  EXPECT_THROW(parse_cxt("B\n\n2\n1\n\na\na\nx\nX\nX\n"), ParseError);
}

TEST(Context, CxtRoundTrip) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto ctx = oracle::random_context(seed, 1 + seed % 6, 1 + seed % 5, 0.4);
    const auto text = to_cxt(ctx);
    const auto back = parse_cxt(text);
    EXPECT_EQ(back, ctx);
    EXPECT_EQ(to_cxt(back), text);
  }
}

TEST(Context, GaloisLawsExhaustive) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto ctx = oracle::random_context(seed, 1 + seed % 5, 1 + (seed / 5) % 5, 0.5);
    const std::uint64_t objects = std::uint64_t{1} << ctx.object_count();
    const std::uint64_t attributes = std::uint64_t{1} << ctx.attribute_count();
    for (std::uint64_t b = 0; b < objects; ++b) {
      const auto B = IndexSet::from_mask(b);
      EXPECT_TRUE(B.subset_of(ctx.down(ctx.up(B))));
      EXPECT_EQ(ctx.up(ctx.down(ctx.up(B))), ctx.up(B));
      for (std::uint64_t b2 = 0; b2 < objects; ++b2) {
        const auto B2 = IndexSet::from_mask(b2);
        if (B.subset_of(B2)) EXPECT_TRUE(ctx.up(B2).subset_of(ctx.up(B)));
      }
    }
    for (std::uint64_t y = 0; y < attributes; ++y) {
      const auto Y = IndexSet::from_mask(y);
      EXPECT_TRUE(Y.subset_of(ctx.up(ctx.down(Y))));
      EXPECT_EQ(ctx.down(ctx.up(ctx.down(Y))), ctx.down(Y));
      for (std::uint64_t y2 = 0; y2 < attributes; ++y2) {
        const auto Y2 = IndexSet::from_mask(y2);
        if (Y.subset_of(Y2)) EXPECT_TRUE(ctx.down(Y2).subset_of(ctx.down(Y)));
      }
    }
  }
}

TEST(Context, NormalizationAddsFreshAttributeOnlyWhenNeeded) {
  EXPECT_EQ(normalize_no_universal_object(music_context()), music_context());

  const auto case3 = cdst::testing::movies3_context();
  const auto normalized = normalize_no_universal_object(case3);
  ASSERT_EQ(normalized.attribute_count(), 4u);
  EXPECT_EQ(normalized.attributes().back(), "__none__");
  EXPECT_TRUE(normalized.down(normalized.all_attributes()).empty());
  EXPECT_TRUE(normalized.attribute_extent(3).empty());

  const auto taken = cdst::testing::make_context({"a"}, {"__none__"}, {{"a", "__none__"}});
  const auto renamed = normalize_no_universal_object(taken);
  ASSERT_EQ(renamed.attribute_count(), 2u);
  EXPECT_NE(renamed.attributes()[1], "__none__");
  EXPECT_EQ(renamed.attributes()[1].rfind("__none__", 0), 0u);

  const FormalContext empty({}, {}, {});
  EXPECT_EQ(normalize_no_universal_object(empty), empty);
}
