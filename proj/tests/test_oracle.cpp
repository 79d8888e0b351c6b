#include <gtest/gtest.h>

#include <sstream>

#include "rdperm/branching_graph.hpp"
#include "rdperm/errors.hpp"
#include "rdperm/measures.hpp"
#include "rdperm/oracle.hpp"
#include "rdperm/random.hpp"

using namespace rdperm;
using namespace rdperm::oracle;

namespace {
RecordWord W(const char* s) { return RecordWord::parse(s); }
Permutation P(const char* s) { return Permutation::parse(s); }
Rational Q(long a, long b) { return make_rational(a, b); }

// random convex mixture of elementary measures with small integer weights
ExactDistribution random_rd_measure(int n, RandomStream& rng) {
  std::map<RecordWord, Rational> weight;
  Rational total = 0;
  GraphLevel(n).for_each([&](const RecordWord& rho) {
    const auto w = rng.uniform_int(0, 5);
    weight[rho] = w;
    total += w;
  });
  if (total == 0) weight[RecordWord::all_ones(n)] = total = 1;
  ExactDistribution out(n);
  for_each_permutation(n, [&](const Permutation& s) {
    const RecordWord rho = records(s);
    Rational m = weight[rho] / total / Rational(dimension(rho));
    m.canonicalize();
    out.add(s, m);
  });
  return out;
}
}  // namespace

TEST(Fiber, Examples) {
  EXPECT_EQ(enumerate_record_fiber(W("111")), (std::vector<Permutation>{P("1 2 3")}));
  EXPECT_EQ(enumerate_record_fiber(W("110")), (std::vector<Permutation>{P("1 3 2"), P("2 3 1")}));
  EXPECT_EQ(enumerate_record_fiber(W("10110")).size(), 4u);
  EXPECT_THROW(enumerate_record_fiber(RecordWord::all_ones(9)), BudgetExceeded);
  EXPECT_NO_THROW(enumerate_record_fiber(RecordWord::all_ones(9), EnumerationBudget{362880}));
}

TEST(Fiber, PartitionsTheGroup) {
  for (int n = 1; n <= 7; ++n) {
    std::size_t total = 0;
    GraphLevel(n).for_each([&](const RecordWord& rho) { total += enumerate_record_fiber(rho).size(); });
    std::size_t fact = 1;
    for (int i = 2; i <= n; ++i) fact *= static_cast<std::size_t>(i);
    EXPECT_EQ(total, fact);
  }
}

TEST(OraclePosition, Examples) {
  EXPECT_EQ(oracle_position_distribution(W("1111"), OrderPrefix{}), (PositionLaw{{1, 1}}));
  EXPECT_EQ(oracle_position_distribution(W("10110"), OrderPrefix{}), (PositionLaw{{2, Q(3, 4)}, {5, Q(1, 4)}}));
  EXPECT_EQ(oracle_position_distribution(W("110"), OrderPrefix{}), (PositionLaw{{1, Q(1, 2)}, {3, Q(1, 2)}}));
  EXPECT_THROW(oracle_position_distribution(W("110"), OrderPrefix({2})), ConditioningError);
}

TEST(OracleProjection, Examples) {
  EXPECT_EQ(oracle_projection(uniform_distribution(4), 3), uniform_distribution(3));
  ExactDistribution point(4);
  point.add(P("3 4 1 2"), 1);
  ExactDistribution expected(3);
  expected.add(P("3 1 2"), 1);
  EXPECT_EQ(oracle_projection(point, 3), expected);
  ExactDistribution half(2);
  half.add(P("1 2"), Q(1, 2));
  half.add(P("2 1"), Q(1, 2));
  EXPECT_EQ(oracle_projection(elementary_measure(W("110")), 2), half);
}

TEST(RecordDependence, Examples) {
  for (int n = 1; n <= 6; ++n) EXPECT_TRUE(is_record_dependent(uniform_distribution(n)));
  EXPECT_TRUE(is_record_dependent(elementary_measure(W("10110"))));
  ExactDistribution point(3);
  point.add(P("1 3 2"), 1);
  EXPECT_FALSE(is_record_dependent(point));
  EXPECT_TRUE(is_record_dependent(uniform_distribution(4).to_double()));
}

TEST(RecordDependence, EwensIsNotCoherent) {
  const auto e4 = ewens_records(4, 2);
  const auto e3 = ewens_records(3, 2);
  EXPECT_TRUE(is_record_dependent(e4));
  EXPECT_TRUE(e4.is_normalized());
  const auto projected = oracle_projection(e4, 3);
  EXPECT_TRUE(is_record_dependent(projected));
  EXPECT_NE(projected, e3);
}

TEST(RecordDependence, ClosedUnderProjection) {
  RandomStream rng(12);
  for (int n = 2; n <= 7; ++n)
    for (int trial = 0; trial < 15; ++trial) {
      const auto m = random_rd_measure(n, rng);
      ASSERT_TRUE(m.is_normalized());
      ASSERT_TRUE(is_record_dependent(m));
      for (int k = 1; k < n; ++k) ASSERT_TRUE(is_record_dependent(oracle_projection(m, k)));
    }
}

TEST(Golden, DumpIsStable) {
  std::ostringstream a, b;
  write_golden(a, 4);
  write_golden(b, 4);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_NE(a.str().find("fiber 1000 6"), std::string::npos);
  EXPECT_NE(a.str().find("projection 1000 k=3\n  1 2 3 1/6\n"), std::string::npos);
}
