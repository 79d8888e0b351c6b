#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rdperm {

/// A permutation of [n] in one-row notation sigma(1) ... sigma(n).
///
/// Positions and values are 1-based throughout the library.
class Permutation {
 public:
  /// Throws std::invalid_argument unless `word` is a rearrangement of 1..n, n >= 1.
  explicit Permutation(std::vector<int> word);

  static Permutation identity(int n);

  /// Parses a space-separated word such as "3 4 1 2".
  static Permutation parse(std::string_view text);

  int size() const noexcept { return static_cast<int>(word_.size()); }

  /// Value at a 1-based position.
  int operator()(int position) const { return word_[static_cast<std::size_t>(position - 1)]; }

  std::span<const int> word() const noexcept { return word_; }

  /// inverse()[v - 1] is the position of letter v.
  std::vector<int> inverse() const;

  std::string to_string() const;

  auto operator<=>(const Permutation&) const = default;
  bool operator==(const Permutation&) const = default;

 private:
  std::vector<int> word_;
};

/// Binary word rho(1) ... rho(n) with rho(1) = 1 marking a record set.
class RecordWord {
 public:
  explicit RecordWord(std::vector<std::uint8_t> bits);

  /// Parses a bit string such as "10110".
  static RecordWord parse(std::string_view text);

  /// The word with ones exactly at the given (1-based) positions.
  static RecordWord from_positions(int n, std::span<const int> ones);

  static RecordWord all_ones(int n);

  int size() const noexcept { return static_cast<int>(bits_.size()); }

  /// 1-based accessor.
  bool is_record(int position) const { return bits_[static_cast<std::size_t>(position - 1)] != 0; }

  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  /// Increasing list of zero positions l_1 < ... < l_k.
  std::vector<int> zero_positions() const;

  /// Increasing list of record positions.
  std::vector<int> record_positions() const;

  /// Position of the last 1.
  int last_record() const;

  std::string to_string() const;

  auto operator<=>(const RecordWord&) const = default;
  bool operator==(const RecordWord&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Ranks r_1 ... r_n with r_i in {1, ..., i}; r_i = k when sigma(i) is the
/// k-th smallest of sigma(1), ..., sigma(i).
class RankVector {
 public:
  /// Throws InvalidRank when some r_i falls outside [1, i].
  explicit RankVector(std::vector<int> ranks);

  int size() const noexcept { return static_cast<int>(ranks_.size()); }
  int operator()(int i) const { return ranks_[static_cast<std::size_t>(i - 1)]; }
  std::span<const int> ranks() const noexcept { return ranks_; }

  bool operator==(const RankVector&) const = default;

 private:
  std::vector<int> ranks_;
};

RecordWord records(const Permutation& sigma);

RankVector to_ranks(const Permutation& sigma);

Permutation from_ranks(const RankVector& r);

/// Deletes letters m+1, ..., n from the word (the projection onto S_m).
Permutation project(const Permutation& sigma, int m);

/// Record words of the successive projections onto S_1, S_2, ..., S_n.
std::vector<RecordWord> phi_path(const Permutation& sigma);

/// Inverse of phi_path; throws InvalidPath for sequences that are not paths.
Permutation phi_inverse(std::span<const RecordWord> path);

/// One candidate record set B of length n-1 for a record set A of length n,
/// with the number of permutations having records A whose projection has
/// records B (always 0 or 1).
struct PredecessorCount {
  RecordWord predecessor;
  int multiplicity;
};

/// All B in R_{n-1}, in lexicographic order, with multiplicities.
std::vector<PredecessorCount> record_predecessors(const RecordWord& a);

/// Successor view of the deletion-insertion operation: the record sets A of
/// length n produced from B (length n-1) by deleting every element >= j and
/// inserting j, for j = 1, ..., n. Listed with multiplicity in order of j.
std::vector<RecordWord> deletion_insertion_images(const RecordWord& b);

}  // namespace rdperm

template <>
struct std::hash<rdperm::Permutation> {
  std::size_t operator()(const rdperm::Permutation& p) const noexcept;
};

template <>
struct std::hash<rdperm::RecordWord> {
  std::size_t operator()(const rdperm::RecordWord& w) const noexcept;
};
