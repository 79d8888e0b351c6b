#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rdperm/rational.hpp"

namespace rdperm {

/// Closed-form tails alpha_k = f(k + index_offset) - value_shift.
enum class TailRule {
  square,       // f(j) = j^2
  power_of_two  // f(j) = 2^j
};

std::string rule_name(TailRule rule);

/// Strictly increasing sequence alpha_1 < alpha_2 < ... of positive integers
/// (possibly followed by +infinity) with a summable sequence of reciprocals.
///
/// The sequence is an explicit prefix alpha_1..alpha_K followed either by
/// +infinity forever or by a closed-form rule whose reciprocal tail sum has a
/// certified bound. The shifted rule form is what the dual algorithm's
/// updates produce from an unshifted rule.
class AlphaSpec {
 public:
  struct RuleTail {
    TailRule rule;
    std::int64_t index_offset = 0;
    std::int64_t value_shift = 0;
    bool operator==(const RuleTail&) const = default;
  };

  /// Finite prefix; every later element is +infinity.
  static AlphaSpec finite(std::vector<std::int64_t> prefix);

  /// Prefix followed by alpha_k = f(k + offset) - shift for k > K.
  static AlphaSpec with_rule(std::vector<std::int64_t> prefix, TailRule rule, std::int64_t index_offset = 0,
                             std::int64_t value_shift = 0);

  /// The sequence (+inf, +inf, ...).
  static AlphaSpec all_infinite() { return finite({}); }

  const std::vector<std::int64_t>& prefix() const noexcept { return prefix_; }
  const std::optional<RuleTail>& tail() const noexcept { return tail_; }
  bool has_infinite_tail() const noexcept { return !tail_.has_value(); }

  /// alpha_k for k >= 1; nullopt encodes +infinity.
  std::optional<std::int64_t> at(std::int64_t k) const;

  /// alpha_k as a double (+inf when infinite); valid far into a rule tail.
  double at_real(std::int64_t k) const;

  /// Certified upper bound on the sum of 1/alpha_k over k > K, K >= prefix size.
  double tail_reciprocal_bound(std::int64_t K) const;

  /// Moves the first `count` rule elements into the explicit prefix.
  void materialize(std::int64_t count);

  /// Number of finite entries when the tail is infinite.
  std::int64_t finite_length() const;

  bool operator==(const AlphaSpec&) const = default;

 private:
  AlphaSpec() = default;
  void validate() const;

  std::vector<std::int64_t> prefix_;
  std::optional<RuleTail> tail_;
};

/// Boundary parameter: the apex (uniform order) or a pair (alpha, p).
struct OmegaPoint {
  struct Star {
    bool operator==(const Star&) const = default;
  };
  struct AlphaP {
    AlphaSpec alpha;
    double p = 1.0;
    bool operator==(const AlphaP&) const = default;
  };

  std::variant<Star, AlphaP> value;

  static OmegaPoint star() { return {Star{}}; }
  static OmegaPoint alpha_p(AlphaSpec alpha, double p);

  bool is_star() const noexcept { return std::holds_alternative<Star>(value); }
  const AlphaP& pair() const { return std::get<AlphaP>(value); }

  /// Compact comma-free label, e.g. "star" or "alpha[2;5|infinite]p=1".
  std::string label() const;

  bool operator==(const OmegaPoint&) const = default;
};

/// Which position the dual algorithm gave to the current letter.
struct PositionCase {
  enum class Kind { head, head_with_alpha1_eq_1, slot };
  Kind kind;
  std::int64_t slot_index = 0;  // i for slot(i), 1-based

  static PositionCase head() { return {Kind::head, 0}; }
  static PositionCase head_alpha1_one() { return {Kind::head_with_alpha1_eq_1, 0}; }
  static PositionCase slot(std::int64_t i) { return {Kind::slot, i}; }
};

/// The sequence alpha' after placing the current letter:
///  head:                  alpha'_k = alpha_k - 1
///  head_with_alpha1_eq_1: alpha'_k = alpha_{k+1} - 1
///  slot(i):               alpha'_k = alpha_k (k < i), alpha_{k+1} - 1 (k >= i)
/// Throws std::invalid_argument when the case does not fit alpha.
AlphaSpec update_alpha(const AlphaSpec& alpha, PositionCase chosen);

/// Law of nu: Prob{nu = 0} = prod_m (1 - 1/alpha_m) and
/// Prob{nu = k} = (1/alpha_k) prod_{m > k} (1 - 1/alpha_m).
struct NuDistribution {
  bool exact = false;
  /// masses[k] = Prob{nu = k} for k = 0..masses.size()-1 (exact kind).
  std::vector<Rational> exact_masses;
  /// Same masses as doubles (both kinds).
  std::vector<double> masses;
  /// Prob{nu >= masses.size()}, lumped.
  double tail_mass = 0;
  /// Bound on the absolute error of every listed mass and of tail_mass.
  double error_bound = 0;
};

/// Exact rationals for finite alpha. For rule tails the listed masses extend
/// until the remaining mass drops below `tolerance` or `max_entries` is
/// reached; the remainder is reported as tail_mass.
NuDistribution nu_distribution(const AlphaSpec& alpha, double tolerance = 1e-12,
                               std::int64_t max_entries = 100000);

}  // namespace rdperm
