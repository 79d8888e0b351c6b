#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "rdperm/alpha.hpp"
#include "rdperm/distribution.hpp"
#include "rdperm/permutation.hpp"
#include "rdperm/random.hpp"
#include "rdperm/rational.hpp"

namespace rdperm {

/// Positions sigma^{-1}(1), ..., sigma^{-1}(m) of the first m letters.
class OrderPrefix {
 public:
  OrderPrefix() = default;
  /// Throws std::invalid_argument on repeated or non-positive entries.
  explicit OrderPrefix(std::vector<std::int64_t> positions);

  std::size_t size() const noexcept { return positions_.size(); }
  bool empty() const noexcept { return positions_.empty(); }
  std::span<const std::int64_t> positions() const noexcept { return positions_; }
  std::int64_t operator[](std::size_t i) const { return positions_[i]; }

 private:
  std::vector<std::int64_t> positions_;
};

using PositionLaw = std::map<std::int64_t, Rational>;

/// L(rho) = prod over zero positions l of (1 - 1/(l - 1)); 1 for no zeros.
Rational L_statistic(const RecordWord& rho);

/// Floating-point L(rho), linear time, for long paths.
double L_statistic_real(const RecordWord& rho);

/// L(rho) with the factor of a zero at position 2 left out. That factor is 0
/// and only records that position 2 holds a smaller letter than position 1,
/// so this is the quantity whose vanishing signals the uniform limit.
double reduced_L_real(const RecordWord& rho);

/// Uniform draw from {sigma : records(sigma) = rho}: the maximum goes to the
/// last record, each block of non-records after a record is an equiprobable
/// sample of the unused values, and the next record takes the largest value left.
Permutation sample_elementary(const RecordWord& rho, RandomStream& rng);

/// 1/dimension(rho) on the record fiber of rho, else 0.
Rational elementary_pmf(const RecordWord& rho, const Permutation& sigma);

/// Law of sigma^{-1}(1) under the elementary measure of rho.
PositionLaw position_of_one_distribution(const RecordWord& rho);

/// Law of sigma^{-1}(t) given sigma^{-1}(j) = placed[j-1] for j < t, where
/// t = placed.size() + 1. Throws ConditioningError if the prefix has
/// probability zero.
PositionLaw conditional_position_distribution(const RecordWord& rho, const OrderPrefix& placed);

/// Pushforward of the elementary measure of rho onto S_k, by enumerating the
/// rank vectors of its record fiber. Throws BudgetExceeded when
/// dimension(rho) > budget.
ExactDistribution elementary_projection_exact(const RecordWord& rho, int k, std::uint64_t budget = 1'000'000);

enum class Execution { serial, parallel };

/// Empirical distribution of `draw` over `samples` draws. Draws are split
/// into fixed chunks with child streams of `seed`, so both execution modes
/// return identical results.
ApproxDistribution empirical_distribution(int k, std::int64_t samples, std::uint64_t seed,
                                          const std::function<Permutation(RandomStream&)>& draw,
                                          Execution execution = Execution::parallel);

/// Monte Carlo pushforward of the elementary measure of rho onto S_k.
ApproxDistribution elementary_projection_mc(const RecordWord& rho, int k, std::int64_t samples, std::uint64_t seed,
                                            Execution execution = Execution::parallel);

/// Uniform permutation of [n] through independent uniform ranks.
Permutation sample_uniform(int n, RandomStream& rng);

/// Sequential sampler of sigma^{-1}(1), sigma^{-1}(2), ... under P^(alpha,1).
///
/// Each step draws nu from the current alpha, places the letter at the y-th
/// unused position (y = 1 for nu = 0, alpha_nu + 1 otherwise) and updates
/// alpha as update_alpha does. The current sequence is kept implicitly: with
/// A the initial sequence, H the number of head steps and D the deleted
/// initial indices, alpha_k = A_j - H - (j - k) where j is the k-th index not
/// in D. Since A_j - j never decreases, alpha_k >= A_k - H, which gives a
/// Poisson majorant for the firing indices beyond a cutoff; nu is drawn
/// exactly by thinning it.
class DualSampler {
 public:
  explicit DualSampler(AlphaSpec alpha);

  /// Absolute position of the next letter.
  std::int64_t next(RandomStream& rng);

  /// Draws nu for the current alpha without advancing.
  std::int64_t sample_nu(RandomStream& rng) const;

  /// Current alpha_k; nullopt for +infinity.
  std::optional<std::int64_t> alpha_at(std::int64_t k) const;

  std::int64_t letters_placed() const noexcept { return placed_; }
  /// Largest M with 1..M all occupied.
  std::int64_t filled_prefix() const noexcept { return filled_; }
  /// The y-th smallest unused position.
  std::int64_t unused_position(std::int64_t y) const;

 private:
  std::int64_t surviving_index(std::int64_t k) const;  // j_k
  double alpha_real(std::int64_t k) const;
  void occupy(std::int64_t position);

  AlphaSpec base_;
  std::int64_t heads_ = 0;
  std::vector<std::int64_t> deleted_;  // sorted initial indices
  std::int64_t placed_ = 0;
  std::int64_t filled_ = 0;
  std::set<std::int64_t> scattered_;  // occupied positions above filled_
};

OrderPrefix sample_order_prefix_dual(const AlphaSpec& alpha, std::int64_t m, RandomStream& rng);

/// Permutation of [n] obtained by ordering letters 1..n by their positions.
/// Throws InsufficientPrefix when the prefix lists fewer than n letters.
Permutation prefix_to_projection(const OrderPrefix& prefix, int n);

/// Draw of the projection onto S_n of P^omega.
Permutation sample_projection(const OmegaPoint& omega, int n, RandomStream& rng);

/// Exact marginal on S_n of P^(alpha,1) for finite alpha, by enumerating
/// every branch of the dual algorithm. Throws std::invalid_argument for
/// other omegas and BudgetExceeded when (K+1)^n > budget.
ExactDistribution exact_marginal(const OmegaPoint& omega, int n, std::uint64_t budget = 10'000'000);

/// Marginal on S_k of P^omega for the apex or a finite alpha with any p,
/// as floats (mixes exact_marginal over the Bernoulli split).
ApproxDistribution limit_marginal(const OmegaPoint& omega, int k);

/// Uniform distribution on S_n.
ExactDistribution uniform_distribution(int n);

}  // namespace rdperm
