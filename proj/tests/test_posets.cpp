#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "rdperm/errors.hpp"
#include "rdperm/measures.hpp"
#include "rdperm/oracle.hpp"
#include "rdperm/posets.hpp"

using namespace rdperm;

namespace {

CausalSetSpec spec(std::vector<std::int64_t> alpha) { return CausalSetSpec(AlphaSpec::finite(std::move(alpha))); }

std::vector<std::string> words(const std::vector<FibWord>& ws) {
  std::vector<std::string> out;
  for (const auto& w : ws) out.push_back(w.to_string());
  return out;
}

std::set<std::string> as_set(const std::vector<FibWord>& ws) {
  const auto v = words(ws);
  return {v.begin(), v.end()};
}

// the record word with ones exactly at the beta window
RecordWord beta_word(const CausalSetSpec& s, int n) { return RecordWord::from_positions(n, s.beta(n)); }

}  // namespace

TEST(CausalSet, BetaComplementsTheSlots) {
  const auto s = spec({2, 5, 6});
  EXPECT_EQ(s.slots(10), (std::vector<int>{3, 6, 7}));
  EXPECT_EQ(s.beta(10), (std::vector<int>{1, 2, 4, 5, 8, 9, 10}));
  const CausalSetSpec sq(AlphaSpec::with_rule({}, TailRule::square));
  for (int n : {1, 10, 50}) {
    auto all = sq.slots(n);
    const auto b = sq.beta(n);
    all.insert(all.end(), b.begin(), b.end());
    std::sort(all.begin(), all.end());
    ASSERT_EQ(all.size(), static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) EXPECT_EQ(all[static_cast<std::size_t>(i - 1)], i);
  }
}

TEST(CausalSet, TotalOrderForInfiniteAlpha) {
  const auto order = causal_order_window(spec({}), 5);
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j) EXPECT_EQ(order.precedes(i, j), i < j);
}

TEST(CausalSet, GeneratorsForAlphaTwo) {
  const auto s = spec({2});
  EXPECT_EQ(s.beta(4), (std::vector<int>{1, 2, 4}));
  const auto order = causal_order_window(s, 4);
  std::set<std::pair<int, int>> gens(order.generators().begin(), order.generators().end());
  EXPECT_EQ(gens, (std::set<std::pair<int, int>>{{1, 2}, {2, 4}, {3, 2}}));
  EXPECT_TRUE(order.precedes(3, 4));
  EXPECT_TRUE(order.precedes(1, 4));
  EXPECT_FALSE(order.precedes(1, 3));
  EXPECT_FALSE(order.precedes(3, 1));
  EXPECT_EQ(order.predecessors(4), (std::vector<int>{1, 2, 3}));
}

TEST(CausalSet, SlotsCoveredBySameBetaAreIncomparable) {
  const auto order = causal_order_window(spec({2, 3}), 6);
  EXPECT_FALSE(order.precedes(3, 4));
  EXPECT_FALSE(order.precedes(4, 3));
  EXPECT_TRUE(order.precedes(3, 2));
  EXPECT_TRUE(order.precedes(4, 2));
}

TEST(NaturalExtension, Examples) {
  EXPECT_TRUE(is_natural_extension(causal_order_window(spec({}), 4), Permutation::identity(4)));
  const auto order = causal_order_window(spec({2}), 4);
  EXPECT_TRUE(is_natural_extension(order, Permutation::parse("1 3 2 4")));
  EXPECT_TRUE(is_natural_extension(order, Permutation::parse("2 3 1 4")));
  // slot 3 labelled above its covering beta 2
  EXPECT_FALSE(is_natural_extension(order, Permutation::parse("1 2 3 4")));
  EXPECT_THROW(is_natural_extension(order, Permutation::identity(3)), std::invalid_argument);
}

TEST(NaturalExtension, RecordDualityExhaustive) {
  for (const auto& alpha : std::vector<std::vector<std::int64_t>>{{}, {1}, {2}, {1, 2}, {2, 3}, {2, 5}, {3, 4, 5}, {1, 3, 6}}) {
    const auto s = spec(alpha);
    for (int n = 1; n <= 7; ++n) {
      const auto order = causal_order_window(s, n);
      const RecordWord target = beta_word(s, n);
      std::vector<Permutation> by_records;
      oracle::for_each_permutation(n, [&](const Permutation& sigma) {
        const bool ext = is_natural_extension(order, sigma);
        ASSERT_EQ(ext, records(sigma) == target) << sigma.to_string();
        if (ext) by_records.push_back(sigma);
      });
      EXPECT_EQ(natural_extensions(order), by_records);
    }
  }
}

TEST(NaturalExtension, BudgetIsEnforced) {
  EXPECT_THROW(natural_extensions(causal_order_window(spec({1, 2, 3, 4, 5}), 7), 10), BudgetExceeded);
}

TEST(OrderInvariance, Examples) {
  EXPECT_TRUE(order_invariance_check(spec({}), 6));
  EXPECT_TRUE(order_invariance_check(spec({2}), 4));
  EXPECT_TRUE(order_invariance_check(spec({2, 4}), 6));
  EXPECT_TRUE(order_invariance_check(spec({1, 2, 3}), 7));
}

TEST(OrderInvariance, ConditionedProjectionsAreUniformOnExtensions) {
  // P^(alpha,1) given the record set of its projection is uniform on the extensions
  const AlphaSpec alpha = AlphaSpec::finite({2, 4});
  const auto s = CausalSetSpec(alpha);
  const int n = 6;
  const auto exts = natural_extensions(causal_order_window(s, n));
  const RecordWord target = beta_word(s, n);
  RandomStream rng(2024);
  std::map<Permutation, int> hist;
  int kept = 0;
  for (int i = 0; i < 100000; ++i) {
    const Permutation p = sample_projection(OmegaPoint::alpha_p(alpha, 1.0), n, rng);
    if (records(p) != target) continue;
    ++hist[p];
    ++kept;
  }
  ASSERT_GT(kept, 1000);
  double tv = 0;
  for (const auto& e : exts) tv += std::abs(hist[e] / double(kept) - 1.0 / exts.size());
  EXPECT_EQ(hist.size(), exts.size());
  EXPECT_LT(tv / 2, 0.02);
}

TEST(FibWord, Validation) {
  EXPECT_EQ(FibWord::parse("2212").weight(), 7);
  EXPECT_THROW(FibWord::parse(""), std::invalid_argument);
  EXPECT_THROW(FibWord::parse("213"), std::invalid_argument);
}

TEST(YoungFibonacci, SuccessorExamples) {
  EXPECT_EQ(as_set(yf_successors(FibWord::parse("2212"))),
            (std::set<std::string>{"12212", "21212", "22112", "2222"}));
  EXPECT_EQ(as_set(yf_successors(FibWord::parse("1"))), (std::set<std::string>{"11", "2"}));
  EXPECT_EQ(as_set(yf_successors(FibWord::parse("2"))), (std::set<std::string>{"12", "21"}));
  for (const auto& w : yf_level(7))
    for (const auto& s : yf_successors(w)) EXPECT_EQ(s.weight(), w.weight() + 1);
}

TEST(YoungFibonacci, Levels) {
  EXPECT_EQ(words(yf_level(1)), (std::vector<std::string>{"1"}));
  EXPECT_EQ(as_set(yf_level(4)), (std::set<std::string>{"1111", "211", "121", "112", "22"}));
  EXPECT_EQ(yf_level(10).size(), 89u);
  std::vector<std::size_t> c{0};
  for (int n = 1; n <= 20; ++n) c.push_back(yf_level(n).size());
  EXPECT_EQ(c[1], 1u);
  EXPECT_EQ(c[2], 2u);
  for (int n = 3; n <= 20; ++n) EXPECT_EQ(c[static_cast<std::size_t>(n)], c[static_cast<std::size_t>(n - 1)] + c[static_cast<std::size_t>(n - 2)]);
}

TEST(YoungFibonacci, EveryWordIsReachable) {
  for (int n = 1; n < 12; ++n) {
    std::set<std::string> reached;
    for (const auto& w : yf_level(n))
      for (const auto& s : yf_successors(w)) reached.insert(s.to_string());
    EXPECT_EQ(reached, as_set(yf_level(n + 1)));
  }
}

TEST(YoungFibonacci, Export) {
  std::ostringstream os;
  export_yf_level(os, 2);
  EXPECT_EQ(os.str(), "11 -> 111 21\n2 -> 12 21\n");
}

TEST(Differential, YoungFibonacciHasNoViolations) {
  const auto rep = differential_poset_check(GradedFamily::young_fibonacci, 8);
  EXPECT_TRUE(rep.ok()) << rep.violations.front().to_string();
  EXPECT_EQ(rep.vertices_checked, 1u + 1 + 2 + 3 + 5 + 8 + 13 + 21 + 34);
}

TEST(Differential, LevelOneOfYoungFibonacci) {
  // 1 sits above the virtual root and below 11 and 2
  const auto rep = differential_poset_check(GradedFamily::young_fibonacci, 1);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.vertices_checked, 2u);
}

TEST(Differential, RecordGraphHasAWitness) {
  const auto rep = differential_poset_check(GradedFamily::records, 5);
  ASSERT_FALSE(rep.ok());
  const auto& v = rep.violations.front();
  EXPECT_LE(v.level, 5);
  EXPECT_EQ(v.kind, DifferentialViolation::Kind::degree);
  EXPECT_EQ(v.vertex, "10");
  EXPECT_EQ(v.up, 3);
  EXPECT_EQ(v.down, 1);
}
