#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <span>
#include <vector>

#include "rdperm/permutation.hpp"
#include "rdperm/rational.hpp"

namespace rdperm {

/// rho -> tau is an edge of the record graph iff for some k in [n+1],
/// tau agrees with rho below k, tau(k) = 1 and tau vanishes above k.
/// Throws std::invalid_argument unless |tau| = |rho| + 1.
bool is_edge(const RecordWord& rho, const RecordWord& tau);

/// Successors of rho, longest common prefix first (k = n+1, n, ..., 1).
std::vector<RecordWord> successors(const RecordWord& rho);

/// Predecessors of tau at level |tau| - 1, in lexicographic order.
std::vector<RecordWord> predecessors(const RecordWord& tau);

/// Number of standard paths from level 1 to rho, i.e. the number of
/// permutations with record word rho: prod over zero positions i of (i - 1).
BigInt dimension(const RecordWord& rho);

/// Level n of the record graph; vertices are produced on demand.
class GraphLevel {
 public:
  static constexpr int kMaterializeLimit = 20;

  explicit GraphLevel(int n);

  int level() const noexcept { return n_; }

  /// 2^(n-1).
  BigInt size() const;

  /// Vertex with the given lexicographic index in [0, 2^(n-1)).
  RecordWord vertex(std::uint64_t index) const;

  /// Calls `visit` on every vertex in lexicographic order.
  void for_each(const std::function<void(const RecordWord&)>& visit) const;

  /// All vertices; only for n <= kMaterializeLimit.
  std::vector<RecordWord> vertices() const;

 private:
  int n_;
};

/// A path rho_1 -> ... -> rho_n, validated on construction.
class PathPrefix {
 public:
  explicit PathPrefix(std::vector<RecordWord> entries);

  int length() const noexcept { return static_cast<int>(entries_.size()); }
  const RecordWord& endpoint() const { return entries_.back(); }
  std::span<const RecordWord> entries() const noexcept { return entries_; }

  auto operator<=>(const PathPrefix&) const = default;
  bool operator==(const PathPrefix&) const = default;

 private:
  std::vector<RecordWord> entries_;
};

/// Throws InvalidPath unless consecutive entries are edges.
void validate_path(std::span<const RecordWord> path);

/// True iff paths sharing an endpoint carry equal mass. The masses must sum
/// to 1 exactly; otherwise std::domain_error.
bool is_central(const std::map<PathPrefix, Rational>& measure);

/// Adjacency listing "rho -> tau1 tau2 ..." for every vertex of level n.
void export_level(std::ostream& out, int n);

}  // namespace rdperm
