#include <gtest/gtest.h>

#include "rdperm/boundary.hpp"
#include "rdperm/errors.hpp"

using namespace rdperm;

namespace {
LimitClass classify(const char* spec, int depth, ClassifyOptions opt = {}) {
  const auto path = path_prefix(PathSpec::parse(spec), depth);
  return classify_limit(path, opt);
}
}  // namespace

TEST(Paths, FamiliesAreGraphPaths) {
  for (const char* s : {"ones", "frozen:3,6", "sqrt", "half", "drift", "prefix:4", "frozen:2"})
    EXPECT_NO_THROW(classify_limit(path_prefix(PathSpec::parse(s), 60))) << s;
  EXPECT_EQ(path_word(PathSpec::parse("frozen:3,6"), 7).to_string(), "1101101");
  EXPECT_EQ(path_word(PathSpec::parse("sqrt"), 9).to_string(), "111000000");
  EXPECT_EQ(path_word(PathSpec::parse("half"), 5).to_string(), "11000");
  EXPECT_EQ(PathSpec::parse("frozen:6,3").to_string(), "frozen:3,6");
  EXPECT_THROW(PathSpec::parse("frozen:1"), std::invalid_argument);
  EXPECT_THROW(PathSpec::parse("zigzag"), std::invalid_argument);
}

TEST(Classify, AllOnes) {
  const auto c = classify("ones", 100);
  ASSERT_EQ(c.kind, LimitClass::Kind::alpha_p);
  EXPECT_TRUE(c.omega->pair().alpha.prefix().empty());
  EXPECT_EQ(c.omega->pair().p, 1.0);
  EXPECT_EQ(c.p1, 1.0);
  EXPECT_EQ(c.p2, 1.0);
}

TEST(Classify, SingleFrozenZero) {
  const auto c = classify("frozen:3", 100);
  ASSERT_EQ(c.kind, LimitClass::Kind::alpha_p);
  EXPECT_EQ(c.omega->pair().alpha.prefix(), (std::vector<std::int64_t>{2}));
  EXPECT_DOUBLE_EQ(c.p1, 0.5);
  EXPECT_DOUBLE_EQ(c.p2, 0.5);
  EXPECT_DOUBLE_EQ(c.omega->pair().p, 1.0);
}

TEST(Classify, TwoFrozenZeros) {
  const auto c = classify("frozen:3,6", 200);
  ASSERT_EQ(c.kind, LimitClass::Kind::alpha_p);
  EXPECT_EQ(c.omega->pair().alpha.prefix(), (std::vector<std::int64_t>{2, 5}));
  EXPECT_NEAR(c.omega->pair().p, 1.0, 1e-12);
}

TEST(Classify, ZeroAtTwoIsNotTheApex) {
  // sigma = 2 1 3 4 ... is forced, so the limit is ((1), 1), although L = 0
  const auto c = classify("frozen:2", 100);
  ASSERT_EQ(c.kind, LimitClass::Kind::alpha_p);
  EXPECT_EQ(c.omega->pair().alpha.prefix(), (std::vector<std::int64_t>{1}));
  EXPECT_DOUBLE_EQ(c.omega->pair().p, 1.0);
}

TEST(Classify, HalfZerosHasHalfMass) {
  const auto c = classify("half", 4000);
  ASSERT_EQ(c.kind, LimitClass::Kind::alpha_p);
  EXPECT_TRUE(c.omega->pair().alpha.prefix().empty());
  EXPECT_NEAR(c.omega->pair().p, 0.5, 1e-3);
}

TEST(Classify, DriftingZeroVanishes) {
  // a single zero that keeps moving right contributes a factor 1 - 1/(n-1) -> 1
  const auto c = classify("drift", 1000);
  ASSERT_EQ(c.kind, LimitClass::Kind::alpha_p);
  EXPECT_TRUE(c.omega->pair().alpha.prefix().empty());
  EXPECT_GT(c.omega->pair().p, 0.99);
}

TEST(Classify, StarFromVanishingL) {
  // prefix:1 is 1 0 0 ... 0: sigma(1) = n and the rest uniform, L_reduced = 1/(n-1)
  const auto c = classify("prefix:1", 3000, {.threshold = 1e-3});
  EXPECT_EQ(c.kind, LimitClass::Kind::star);
  EXPECT_TRUE(c.omega->is_star());
  const auto c2 = classify("prefix:2", 3000, {.threshold = 1e-3});
  EXPECT_EQ(c2.kind, LimitClass::Kind::star);
  // default threshold 1e-6 is out of reach at this depth
  EXPECT_NE(classify("prefix:2", 3000).kind, LimitClass::Kind::star);
}

TEST(Classify, UnsettledCoordinatesAreUndetermined) {
  EXPECT_EQ(classify("sqrt", 2000).kind, LimitClass::Kind::undetermined);
}

TEST(Classify, RejectsNonPaths) {
  const std::vector<RecordWord> bad{RecordWord::parse("1"), RecordWord::parse("11"), RecordWord::parse("101")};
  EXPECT_THROW(classify_limit(bad), InvalidPath);
}
