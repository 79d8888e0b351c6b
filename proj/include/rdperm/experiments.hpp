#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rdperm/alpha.hpp"
#include "rdperm/boundary.hpp"
#include "rdperm/measures.hpp"
#include "rdperm/random.hpp"

namespace rdperm {

/// Statistic computed at the Star omega where it has no meaning.
class UnsupportedExperiment : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  std::string kind;  // lln | nonrecord | record_growth | boundary | fill
  OmegaPoint omega = OmegaPoint::star();
  std::vector<std::int64_t> sizes;  // strictly increasing; depths for boundary
  int replicates = 1;
  std::uint64_t seed = 1;
  std::string output;  // CSV path, empty or "-" for stdout
  std::map<std::string, double> thresholds;
  Execution execution = Execution::parallel;

  int kmax = 5;              // nonrecord
  std::string path = "ones"; // boundary: PathSpec text
  int k = 3;                 // boundary: projection size
  bool exact = true;         // boundary: exact or Monte Carlo
  std::int64_t samples = 100000;
  std::optional<OmegaPoint> target;  // boundary: limit to compare with (default: classify)
  std::vector<std::int64_t> probes;  // fill
  std::int64_t horizon = 100000;     // fill

  double threshold(const std::string& name, double fallback) const;
  /// Throws std::invalid_argument on unsorted sizes, replicates < 1 and the like.
  void validate() const;
};

struct TrajectoryStat {
  std::int64_t replicate;  // -1 marks summary rows
  std::int64_t n;
  std::string statistic;
  double value;
  bool operator==(const TrajectoryStat&) const = default;
};

struct ExperimentReport {
  std::string experiment;
  std::string omega;
  std::uint64_t seed = 0;
  std::vector<TrajectoryStat> rows;     // ordered by (replicate, n, statistic)
  std::map<std::string, double> summary;

  /// CSV with header experiment,omega,replicate,n,statistic,value,seed;
  /// summary rows carry replicate "all".
  void write_csv(std::ostream& out) const;
};

/// One coherent order of the first N letters: letter j sits in block
/// block[j-1] (0 = the alpha-ordered block, 1 = the uniform block) at rank
/// key[j-1] inside its block; sigma_n sorts letters 1..n by (block, key).
struct Trajectory {
  std::vector<std::uint8_t> block;
  std::vector<std::int64_t> key;
  /// For p = 1: the filled prefix of the dual sampler after all N letters.
  std::int64_t filled_prefix = 0;

  Permutation at(int n) const;
  /// sigma_n^{-1}(n) for n = 1..N.
  std::vector<std::int64_t> position_of_max() const;
};

Trajectory sample_trajectory(const OmegaPoint& omega, std::int64_t N, RandomStream& rng);

ExperimentReport lln_position_of_max(const ExperimentConfig& config);
ExperimentReport nonrecord_positions(const ExperimentConfig& config);
ExperimentReport record_growth(const ExperimentConfig& config);
ExperimentReport boundary_convergence(const ExperimentConfig& config);
ExperimentReport dual_fills_positions(const ExperimentConfig& config);

/// Dispatches on config.kind.
ExperimentReport run_experiment(const ExperimentConfig& config);

}  // namespace rdperm
