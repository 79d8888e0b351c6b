#include "rdperm/branching_graph.hpp"

#include <stdexcept>

#include "rdperm/errors.hpp"

namespace rdperm {

bool is_edge(const RecordWord& rho, const RecordWord& tau) {
  if (tau.size() != rho.size() + 1)
    throw std::invalid_argument("is_edge: lengths " + std::to_string(rho.size()) + " and " +
                                std::to_string(tau.size()) + " do not differ by one");
  // the witness k is forced to be the last 1 of tau
  const int k = tau.last_record();
  for (int i = 1; i < k; ++i)
    if (rho.is_record(i) != tau.is_record(i)) return false;
  return true;
}

std::vector<RecordWord> successors(const RecordWord& rho) {
  const int n = rho.size();
  std::vector<RecordWord> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (int k = n + 1; k >= 1; --k) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 1; i < k; ++i) bits[static_cast<std::size_t>(i - 1)] = rho.is_record(i) ? 1 : 0;
    bits[static_cast<std::size_t>(k - 1)] = 1;
    out.emplace_back(std::move(bits));
  }
  return out;
}

std::vector<RecordWord> predecessors(const RecordWord& tau) {
  const int m = tau.size() - 1;
  if (m < 1) return {};
  const int k = tau.last_record();
  // positions k..m are free, except that position 1 must stay a record
  const int first_free = std::max(k, 2);
  const int free_bits = m - first_free + 1;
  std::vector<RecordWord> out;
  if (free_bits < 0) {
    std::vector<std::uint8_t> bits(tau.bits().begin(), tau.bits().begin() + m);
    out.emplace_back(std::move(bits));
    return out;
  }
  if (free_bits >= 62) throw std::invalid_argument("predecessors: too many to list");
  const std::uint64_t count = std::uint64_t{1} << free_bits;
  out.reserve(static_cast<std::size_t>(count));
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(m), 0);
    for (int i = 1; i < first_free; ++i) bits[static_cast<std::size_t>(i - 1)] = tau.is_record(i) ? 1 : 0;
    for (int i = first_free; i <= m; ++i)
      bits[static_cast<std::size_t>(i - 1)] = (idx >> (m - i)) & 1U;
    out.emplace_back(std::move(bits));
  }
  return out;
}

BigInt dimension(const RecordWord& rho) {
  BigInt d = 1;
  for (int l : rho.zero_positions()) d *= (l - 1);
  return d;
}

GraphLevel::GraphLevel(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("graph level must be >= 1");
}

BigInt GraphLevel::size() const {
  BigInt s;
  mpz_ui_pow_ui(s.get_mpz_t(), 2, static_cast<unsigned long>(n_ - 1));
  return s;
}

RecordWord GraphLevel::vertex(std::uint64_t index) const {
  if (n_ - 1 >= 64) throw std::invalid_argument("GraphLevel::vertex: level too large for 64-bit index");
  if (n_ - 1 < 64 && index >= (std::uint64_t{1} << (n_ - 1)))
    throw std::out_of_range("GraphLevel::vertex: index out of range");
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n_), 0);
  bits[0] = 1;
  for (int i = 2; i <= n_; ++i) bits[static_cast<std::size_t>(i - 1)] = (index >> (n_ - i)) & 1U;
  return RecordWord(std::move(bits));
}

void GraphLevel::for_each(const std::function<void(const RecordWord&)>& visit) const {
  if (n_ - 1 >= 64) throw std::invalid_argument("GraphLevel::for_each: level too large");
  const std::uint64_t count = std::uint64_t{1} << (n_ - 1);
  for (std::uint64_t idx = 0; idx < count; ++idx) visit(vertex(idx));
}

std::vector<RecordWord> GraphLevel::vertices() const {
  if (n_ > kMaterializeLimit)
    throw std::invalid_argument("GraphLevel::vertices: level " + std::to_string(n_) +
                                " is enumerated lazily; use for_each");
  std::vector<RecordWord> out;
  out.reserve(std::size_t{1} << (n_ - 1));
  for_each([&](const RecordWord& w) { out.push_back(w); });
  return out;
}

void validate_path(std::span<const RecordWord> path) {
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (path[i].size() != path[i - 1].size() + 1)
      throw InvalidPath("path levels are not consecutive at entry " + std::to_string(i + 1));
    if (!is_edge(path[i - 1], path[i]))
      throw InvalidPath("no edge " + path[i - 1].to_string() + " -> " + path[i].to_string());
  }
}

PathPrefix::PathPrefix(std::vector<RecordWord> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw InvalidPath("empty path");
  if (entries_.front().size() != 1) throw InvalidPath("path must start at level 1");
  validate_path(entries_);
}

bool is_central(const std::map<PathPrefix, Rational>& measure) {
  Rational total = 0;
  for (const auto& [path, mass] : measure) {
    if (mass < 0) throw std::domain_error("is_central: negative mass");
    total += mass;
  }
  if (total != 1) throw std::domain_error("is_central: masses sum to " + to_string(total) + ", not 1");

  std::map<RecordWord, Rational> mass_at_endpoint;
  std::map<RecordWord, BigInt> paths_seen;
  for (const auto& [path, mass] : measure) {
    auto [it, inserted] = mass_at_endpoint.emplace(path.endpoint(), mass);
    if (!inserted && it->second != mass) return false;
    paths_seen[path.endpoint()] += 1;
  }
  // paths that are absent carry mass zero
  for (const auto& [endpoint, mass] : mass_at_endpoint)
    if (mass != 0 && paths_seen[endpoint] != dimension(endpoint)) return false;
  return true;
}

void export_level(std::ostream& out, int n) {
  GraphLevel(n).for_each([&](const RecordWord& rho) {
    out << rho.to_string() << " ->";
    for (const auto& tau : successors(rho)) out << ' ' << tau.to_string();
    out << '\n';
  });
}

}  // namespace rdperm
