#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rdperm/alpha.hpp"
#include "rdperm/permutation.hpp"

namespace rdperm {

/// The causal set on N built from alpha: the slots alpha_k + 1 and their
/// increasing complement beta_1 < beta_2 < ... partition N.
class CausalSetSpec {
 public:
  explicit CausalSetSpec(AlphaSpec alpha) : alpha_(std::move(alpha)) {}

  const AlphaSpec& alpha() const noexcept { return alpha_; }
  /// Slots alpha_k + 1 that lie in [n], increasing.
  std::vector<int> slots(int n) const;
  /// beta_k that lie in [n], increasing.
  std::vector<int> beta(int n) const;

 private:
  AlphaSpec alpha_;
};

/// Restriction to [n] of the order generated by beta_1 < beta_2 < ... and
/// alpha_i + 1 < max{beta_k : beta_k <= alpha_i}.
class CausalOrder {
 public:
  CausalOrder(int n, std::vector<std::pair<int, int>> generators);

  int size() const noexcept { return n_; }
  /// Covering pairs (i, j) meaning i precedes j, as generated.
  const std::vector<std::pair<int, int>>& generators() const noexcept { return generators_; }
  /// All strict predecessors of j in the transitive closure, increasing.
  const std::vector<int>& predecessors(int j) const { return preds_[static_cast<std::size_t>(j - 1)]; }
  bool precedes(int i, int j) const;

 private:
  int n_;
  std::vector<std::pair<int, int>> generators_;
  std::vector<std::vector<int>> preds_;
  std::vector<std::vector<bool>> less_;
};

CausalOrder causal_order_window(const CausalSetSpec& spec, int n);

/// True iff sigma, read as the labelling i -> sigma(i) of [n], is order
/// preserving: i before j implies sigma(i) < sigma(j). Equivalently the
/// letters sigma^{-1}(1), sigma^{-1}(2), ... list [n] in an order compatible
/// with the causal order. Throws std::invalid_argument on a size mismatch.
bool is_natural_extension(const CausalOrder& order, const Permutation& sigma);

/// Every natural extension of the window, in lexicographic order. Throws
/// BudgetExceeded past `budget` extensions.
std::vector<Permutation> natural_extensions(const CausalOrder& order, std::uint64_t budget = 1'000'000);

/// Under the uniform measure on natural extensions of [n], checks that each
/// stem (sigma^{-1}(1), ..., sigma^{-1}(k)) of positive probability has a
/// probability depending only on its underlying set.
bool order_invariance_check(const CausalSetSpec& spec, int n, std::uint64_t budget = 1'000'000);

/// Word over {1, 2}; the weight is the digit sum.
class FibWord {
 public:
  /// Throws std::invalid_argument on other digits or an empty word.
  explicit FibWord(std::string digits);
  static FibWord parse(std::string_view text) { return FibWord(std::string(text)); }

  const std::string& digits() const noexcept { return digits_; }
  int weight() const noexcept { return weight_; }
  const std::string& to_string() const noexcept { return digits_; }

  auto operator<=>(const FibWord&) const = default;
  bool operator==(const FibWord&) const = default;

 private:
  std::string digits_;
  int weight_ = 0;
};

/// Upper covers in the Young-Fibonacci graph: a 1 inserted at any slot of
/// the leading block of 2's, then (if the word has a 1) the leftmost 1
/// turned into a 2.
std::vector<FibWord> yf_successors(const FibWord& w);

/// All words of weight n, lexicographic with 1 < 2.
std::vector<FibWord> yf_level(int n);

/// Adjacency listing "w -> s1 s2 ..." for every word of weight n.
void export_yf_level(std::ostream& out, int n);

enum class GradedFamily { young_fibonacci, records };

struct DifferentialViolation {
  enum class Kind { degree, common_neighbours };
  Kind kind;
  int level;
  std::string vertex;
  std::string other;  // second vertex for common_neighbours
  int up;
  int down;

  std::string to_string() const;
};

struct DifferentialReport {
  GradedFamily family;
  int max_level;
  std::uint64_t vertices_checked = 0;
  std::uint64_t pairs_checked = 0;
  std::vector<DifferentialViolation> violations;

  bool ok() const noexcept { return violations.empty(); }
};

/// Checks, for all vertices up to max_level, that up-degree = down-degree + 1
/// and that two distinct vertices of a level share as many upper as lower
/// covers. Both graphs get a virtual root at level 0 below their single
/// level-1 vertex. Stops recording after `max_violations`.
DifferentialReport differential_poset_check(GradedFamily family, int max_level, std::size_t max_violations = 1000);

}  // namespace rdperm
