#include <gtest/gtest.h>

#include <sstream>

#include "rdperm/experiments.hpp"

using namespace rdperm;

namespace {

OmegaPoint ones() { return OmegaPoint::alpha_p(AlphaSpec::all_infinite(), 1.0); }
OmegaPoint square(double p) { return OmegaPoint::alpha_p(AlphaSpec::with_rule({}, TailRule::square), p); }
OmegaPoint finite_omega(std::vector<std::int64_t> a, double p = 1.0) {
  return OmegaPoint::alpha_p(AlphaSpec::finite(std::move(a)), p);
}

ExperimentConfig config(OmegaPoint omega, std::vector<std::int64_t> sizes, int replicates, std::uint64_t seed = 5) {
  ExperimentConfig c;
  c.omega = std::move(omega);
  c.sizes = std::move(sizes);
  c.replicates = replicates;
  c.seed = seed;
  return c;
}

std::vector<double> values(const ExperimentReport& rep, const std::string& statistic) {
  std::vector<double> out;
  for (const auto& r : rep.rows)
    if (r.statistic == statistic) out.push_back(r.value);
  return out;
}

}  // namespace

TEST(Trajectory, ProjectionsAreCoherent) {
  for (const auto& omega : {OmegaPoint::star(), square(1.0), square(0.5), finite_omega({2, 5}, 0.7)}) {
    RandomStream rng(3);
    const Trajectory t = sample_trajectory(omega, 60, rng);
    const Permutation top = t.at(60);
    for (int n : {1, 2, 7, 20, 59}) EXPECT_EQ(project(top, n), t.at(n)) << omega.label() << " n=" << n;
  }
}

TEST(Trajectory, PositionOfMaxMatchesProjections) {
  for (const auto& omega : {OmegaPoint::star(), square(1.0), square(0.3)}) {
    RandomStream rng(11);
    const Trajectory t = sample_trajectory(omega, 80, rng);
    const auto pos = t.position_of_max();
    ASSERT_EQ(pos.size(), 80u);
    for (int n = 1; n <= 80; ++n) {
      EXPECT_EQ(pos[static_cast<std::size_t>(n - 1)], t.at(n).inverse()[static_cast<std::size_t>(n - 1)]);
      EXPECT_GE(pos[static_cast<std::size_t>(n - 1)], 1);
      EXPECT_LE(pos[static_cast<std::size_t>(n - 1)], n);
    }
  }
}

TEST(Trajectory, FiniteAlphaNonRecordsSitAtSlotsOnceFilled) {
  const AlphaSpec alpha = AlphaSpec::finite({2, 5, 10});
  RandomStream rng(8);
  for (int rep = 0; rep < 20; ++rep) {
    const Trajectory t = sample_trajectory(OmegaPoint::alpha_p(alpha, 1.0), 300, rng);
    ASSERT_GE(t.filled_prefix, 11);
    const auto zeros = records(t.at(300)).zero_positions();
    EXPECT_EQ(zeros, (std::vector<int>{3, 6, 11}));
  }
}

TEST(Lln, AllInfiniteAlphaGivesRatioOne) {
  const auto rep = lln_position_of_max(config(ones(), {1, 10, 100}, 4));
  for (double v : values(rep, "position_of_max_ratio")) EXPECT_EQ(v, 1.0);
  for (double v : values(rep, "running_min")) EXPECT_EQ(v, 1.0);
}

TEST(Lln, RatiosLieInUnitInterval) {
  for (const auto& omega : {OmegaPoint::star(), square(1.0), square(0.5)}) {
    const auto rep = lln_position_of_max(config(omega, {5, 50, 500}, 6));
    EXPECT_EQ(rep.rows.size(), 6u * 3 * 2);
    for (const auto& r : rep.rows) {
      EXPECT_GT(r.value, 0.0);
      EXPECT_LE(r.value, 1.0);
    }
  }
}

TEST(Lln, RunningMinimumIsMonotone) {
  const auto rep = lln_position_of_max(config(OmegaPoint::star(), {10, 100, 1000}, 5));
  for (int r = 0; r < 5; ++r) {
    double prev = 2;
    for (const auto& row : rep.rows)
      if (row.replicate == r && row.statistic == "running_min") {
        EXPECT_LE(row.value, prev);
        prev = row.value;
      }
  }
}

TEST(Nonrecord, Examples) {
  auto c = config(ones(), {50}, 3);
  c.kmax = 3;
  auto rep = nonrecord_positions(c);
  for (double v : values(rep, "nonrecord_count")) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(rep.summary.at("fraction_all_at_slots"), 1.0);

  c = config(finite_omega({2}), {10, 1000}, 20);
  c.kmax = 1;
  rep = nonrecord_positions(c);
  EXPECT_EQ(rep.summary.at("fraction_nonrecord_1_at_slot"), 1.0);

  c = config(finite_omega({2, 5}), {10, 1000}, 20);
  c.kmax = 2;
  rep = nonrecord_positions(c);
  EXPECT_EQ(rep.summary.at("fraction_nonrecord_2_at_slot"), 1.0);
  EXPECT_EQ(rep.summary.at("fraction_all_at_slots"), 1.0);
}

TEST(Nonrecord, StarIsUnsupported) {
  EXPECT_THROW(nonrecord_positions(config(OmegaPoint::star(), {10}, 1)), UnsupportedExperiment);
}

TEST(RecordGrowth, AllInfiniteAlphaGivesRatioOne) {
  const auto rep = record_growth(config(ones(), {1, 10, 100}, 3));
  for (double v : values(rep, "record_ratio")) EXPECT_EQ(v, 1.0);
  EXPECT_EQ(rep.summary.at("fraction_ratio_in_band_0.9_1.1"), 1.0);
}

TEST(RecordGrowth, StarSkipsTheUndefinedRatioAtOne) {
  const auto rep = record_growth(config(OmegaPoint::star(), {1, 100}, 2));
  EXPECT_EQ(values(rep, "record_count").size(), 4u);
  EXPECT_EQ(values(rep, "record_ratio").size(), 2u);
  EXPECT_TRUE(rep.summary.count("fraction_ratio_in_band_0.7_1.3"));
}

TEST(Boundary, AllOnesPathHasZeroDistance) {
  auto c = config(ones(), {3, 5, 8}, 1);
  c.kind = "boundary";
  c.path = "ones";
  c.k = 3;
  const auto rep = boundary_convergence(c);
  for (double v : values(rep, "tv")) EXPECT_NEAR(v, 0.0, 1e-15);
  EXPECT_NEAR(rep.summary.at("tv_final"), 0.0, 1e-15);
}

TEST(Boundary, KLargerThanDepthIsRejected) {
  auto c = config(ones(), {2, 5}, 1);
  c.k = 3;
  EXPECT_THROW(boundary_convergence(c), std::invalid_argument);
}

TEST(Boundary, FrozenZerosMatchTheirLimitOncePastTheLastZero) {
  // the elementary measure of the frozen word projects exactly onto the limit marginal
  auto c = config(ones(), {6, 20, 60}, 1);
  c.path = "frozen:3,6";
  c.k = 3;
  const auto rep = boundary_convergence(c);
  EXPECT_EQ(rep.omega, "frozen:3,6->" + finite_omega({2, 5}).label());
  const auto tv = values(rep, "tv");
  ASSERT_EQ(tv.size(), 3u);
  for (double v : tv) EXPECT_NEAR(v, 0.0, 1e-12);
}

TEST(Boundary, SqrtPathMovesTowardUniform) {
  auto c = config(ones(), {16, 1024}, 1, 424242);
  c.path = "sqrt";
  c.k = 3;
  c.exact = false;
  c.samples = 40000;
  c.target = OmegaPoint::star();
  const auto tv = values(boundary_convergence(c), "tv");
  ASSERT_EQ(tv.size(), 2u);
  EXPECT_GT(tv[0], tv[1]);
}

TEST(Fill, Examples) {
  auto c = config(ones(), {1}, 5);
  c.probes = {1, 4, 9};
  c.horizon = 100;
  auto rep = dual_fills_positions(c);
  for (const auto& r : rep.rows) EXPECT_EQ(r.value, static_cast<double>(r.n));

  c = config(finite_omega({1}), {1}, 5);
  c.probes = {1};
  rep = dual_fills_positions(c);
  for (double v : values(rep, "fill_time")) EXPECT_EQ(v, 2.0);

  c = config(square(1.0), {1}, 10);
  c.probes = {100};
  c.horizon = 100000;
  rep = dual_fills_positions(c);
  EXPECT_EQ(rep.summary.at("fraction_filled_100"), 1.0);
}

TEST(Fill, StarIsUnsupported) {
  auto c = config(OmegaPoint::star(), {1}, 1);
  c.probes = {1};
  EXPECT_THROW(dual_fills_positions(c), UnsupportedExperiment);
}

TEST(Determinism, ParallelEqualsSerialAndRepeats) {
  for (const auto& omega : {OmegaPoint::star(), square(0.5)}) {
    auto c = config(omega, {10, 100, 400}, 9, 123);
    const auto a = record_growth(c);
    c.execution = Execution::serial;
    const auto b = record_growth(c);
    const auto again = record_growth(c);
    EXPECT_EQ(a.rows, b.rows);
    EXPECT_EQ(b.rows, again.rows);
    EXPECT_EQ(a.summary, b.summary);
    std::ostringstream x, y;
    a.write_csv(x);
    b.write_csv(y);
    EXPECT_EQ(x.str(), y.str());
  }
}

TEST(Determinism, SeedsChangeOutput) {
  const auto a = lln_position_of_max(config(OmegaPoint::star(), {100}, 4, 1));
  const auto b = lln_position_of_max(config(OmegaPoint::star(), {100}, 4, 2));
  EXPECT_NE(a.rows, b.rows);
}

TEST(Csv, HeaderRowsAndSummary) {
  const auto rep = record_growth(config(ones(), {2, 4}, 1, 9));
  std::ostringstream os;
  rep.write_csv(os);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "experiment,omega,replicate,n,statistic,value,seed");
  std::getline(in, line);
  EXPECT_EQ(line, "record_growth," + ones().label() + ",0,2,record_count,2,9");
  std::string last;
  while (std::getline(in, line)) last = line;
  EXPECT_EQ(last, "record_growth," + ones().label() + ",all,0,fraction_ratio_in_band_0.9_1.1,1,9");
}

TEST(Config, Validation) {
  EXPECT_THROW(config(ones(), {}, 1).validate(), std::invalid_argument);
  EXPECT_THROW(config(ones(), {5, 5}, 1).validate(), std::invalid_argument);
  EXPECT_THROW(config(ones(), {5, 3}, 1).validate(), std::invalid_argument);
  EXPECT_THROW(config(ones(), {5}, 0).validate(), std::invalid_argument);
  EXPECT_NO_THROW(config(ones(), {1, 5}, 1).validate());
  auto c = config(ones(), {5}, 1);
  c.kind = "nope";
  EXPECT_THROW(run_experiment(c), std::invalid_argument);
}
