#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "rdperm/branching_graph.hpp"
#include "rdperm/errors.hpp"
#include "rdperm/oracle.hpp"
#include "rdperm/permutation.hpp"

using namespace rdperm;

namespace {

Permutation P(const char* s) { return Permutation::parse(s); }
RecordWord W(const char* s) { return RecordWord::parse(s); }

std::vector<int> as_set(const RecordWord& w) { return w.record_positions(); }

}  // namespace

TEST(Permutation, RejectsNonPermutations) {
  EXPECT_THROW(Permutation({1, 1}), std::invalid_argument);
  EXPECT_THROW(Permutation({2, 3}), std::invalid_argument);
  EXPECT_THROW(Permutation(std::vector<int>{}), std::invalid_argument);
  EXPECT_THROW(RecordWord::parse("01"), std::invalid_argument);
  EXPECT_THROW(RecordWord::parse("12"), std::invalid_argument);
}

TEST(Records, Examples) {
  EXPECT_EQ(records(P("3 4 1 2")), W("1100"));
  EXPECT_EQ(records(P("1 2 3 4")), W("1111"));
  EXPECT_EQ(records(P("5 4 3 2 1")), W("10000"));
  EXPECT_EQ(records(P("2 6 5 7 1 4 3")).record_positions(), (std::vector<int>{1, 2, 4}));
}

TEST(Ranks, Examples) {
  EXPECT_EQ(to_ranks(P("1")), RankVector({1}));
  EXPECT_EQ(to_ranks(P("3 4 1 2")), RankVector({1, 2, 1, 2}));
  EXPECT_EQ(from_ranks(RankVector({1, 2, 1, 2})), P("3 4 1 2"));
  EXPECT_EQ(from_ranks(RankVector({1, 2, 3, 4, 5})), Permutation::identity(5));
  EXPECT_THROW(RankVector({1, 3}), InvalidRank);
  EXPECT_THROW(RankVector({0}), InvalidRank);
}

TEST(Project, Examples) {
  EXPECT_EQ(project(P("3 4 1 2"), 3), P("3 1 2"));
  EXPECT_EQ(project(P("3 4 1 2"), 4), P("3 4 1 2"));
  EXPECT_EQ(project(P("2 6 5 7 1 4 3"), 4), P("2 1 4 3"));
  EXPECT_THROW(project(P("1 2"), 3), std::invalid_argument);
  EXPECT_THROW(project(P("1 2"), 0), std::invalid_argument);
}

TEST(PhiPath, Examples) {
  const auto path = phi_path(P("3 4 1 2"));
  // projections 1; 1 2; 3 1 2; 3 4 1 2
  EXPECT_EQ(path, (std::vector<RecordWord>{W("1"), W("11"), W("100"), W("1100")}));
  EXPECT_EQ(phi_path(P("3 1 2")), (std::vector<RecordWord>{W("1"), W("11"), W("100")}));
  EXPECT_EQ(phi_inverse(path), P("3 4 1 2"));
  std::vector<RecordWord> ones;
  for (int n = 1; n <= 6; ++n) ones.push_back(RecordWord::all_ones(n));
  EXPECT_EQ(phi_inverse(ones), Permutation::identity(6));
  const std::vector<RecordWord> bad{W("1"), W("11"), W("101")};
  EXPECT_THROW(phi_inverse(bad), InvalidPath);
}

TEST(Exhaustive, RoundTripsAndRecordRankLink) {
  for (int n = 1; n <= 8; ++n) {
    std::set<std::vector<RecordWord>> paths;
    oracle::for_each_permutation(n, [&](const Permutation& s) {
      const auto r = to_ranks(s);
      ASSERT_EQ(from_ranks(r), s);
      const auto rec = records(s);
      for (int i = 1; i <= n; ++i) ASSERT_EQ(rec.is_record(i), r(i) == i);
      auto path = phi_path(s);
      ASSERT_EQ(phi_inverse(path), s);
      paths.insert(std::move(path));
    });
    std::size_t fact = 1;
    for (int i = 2; i <= n; ++i) fact *= static_cast<std::size_t>(i);
    EXPECT_EQ(paths.size(), fact);
  }
}

TEST(Exhaustive, RanksDoNotCommuteWithProjection) {
  bool found = false;
  oracle::for_each_permutation(3, [&](const Permutation& s) {
    const auto r = to_ranks(s).ranks();
    const std::vector<int> truncated(r.begin(), r.begin() + 2);
    if (to_ranks(project(s, 2)).ranks().size() == 2 &&
        !std::equal(truncated.begin(), truncated.end(), to_ranks(project(s, 2)).ranks().begin()))
      found = true;
  });
  EXPECT_TRUE(found);
}

TEST(Exhaustive, TowerProperty) {
  for (int n = 1; n <= 7; ++n)
    oracle::for_each_permutation(n, [&](const Permutation& s) {
      for (int m = 1; m <= n; ++m)
        for (int k = 1; k <= m; ++k) ASSERT_EQ(project(project(s, m), k), project(s, k));
    });
}

TEST(RecordPredecessors, SmallCases) {
  auto only = [](const RecordWord& a) {
    std::vector<RecordWord> hits;
    for (const auto& pc : record_predecessors(a))
      if (pc.multiplicity) hits.push_back(pc.predecessor);
    return hits;
  };
  EXPECT_EQ(only(W("11")), (std::vector<RecordWord>{W("1")}));
  EXPECT_EQ(only(W("10")), (std::vector<RecordWord>{W("1")}));
}

// Each sigma' with records B extends to one sigma per insertion slot of n,
// so the count of sigma with records A over B is dimension(B) * multiplicity.
TEST(RecordPredecessors, MatchesFiberCounting) {
  for (int n = 2; n <= 7; ++n) {
    std::map<std::pair<RecordWord, RecordWord>, int> counted;
    oracle::for_each_permutation(n, [&](const Permutation& s) { ++counted[{records(s), records(project(s, n - 1))}]; });
    for (std::uint64_t i = 0; i < (1ull << (n - 1)); ++i) {
      std::vector<std::uint8_t> bits(static_cast<std::size_t>(n), 0);
      bits[0] = 1;
      for (int j = 1; j < n; ++j) bits[static_cast<std::size_t>(j)] = (i >> (n - 1 - j)) & 1u;
      const RecordWord a(bits);
      for (const auto& pc : record_predecessors(a)) {
        auto it = counted.find({a, pc.predecessor});
        ASSERT_EQ(BigInt(pc.multiplicity) * dimension(pc.predecessor), it == counted.end() ? 0 : it->second);
      }
    }
  }
}

TEST(DeletionInsertion, SevenFromOneThreeFive) {
  const RecordWord b = RecordWord::from_positions(6, std::vector<int>{1, 3, 5});
  std::vector<std::vector<int>> sets;
  for (const auto& a : deletion_insertion_images(b)) sets.push_back(as_set(a));
  const std::vector<std::vector<int>> expected{{1}, {1, 2}, {1, 3}, {1, 3, 4}, {1, 3, 5}, {1, 3, 5, 6}, {1, 3, 5, 7}};
  EXPECT_EQ(sets, expected);
}

TEST(DeletionInsertion, AgreesWithPredecessorRelation) {
  for (int n = 2; n <= 7; ++n)
    for (std::uint64_t i = 0; i < (1ull << (n - 2)); ++i) {
      std::vector<std::uint8_t> bits(static_cast<std::size_t>(n - 1), 0);
      bits[0] = 1;
      for (int j = 1; j < n - 1; ++j) bits[static_cast<std::size_t>(j)] = (i >> (n - 2 - j)) & 1u;
      const RecordWord b(bits);
      for (const auto& a : deletion_insertion_images(b)) {
        int mult = 0;
        for (const auto& pc : record_predecessors(a))
          if (pc.predecessor == b) mult = pc.multiplicity;
        ASSERT_EQ(mult, 1) << a.to_string() << " from " << b.to_string();
      }
    }
}
