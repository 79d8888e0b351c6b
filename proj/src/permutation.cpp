#include "rdperm/permutation.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

#include "fenwick.hpp"
#include "rdperm/errors.hpp"

namespace rdperm {

Permutation::Permutation(std::vector<int> word) : word_(std::move(word)) {
  if (word_.empty()) throw std::invalid_argument("permutation must have size >= 1");
  const int n = size();
  std::vector<bool> seen(word_.size() + 1, false);
  for (int v : word_) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v)])
      throw std::invalid_argument("not a permutation of 1.." + std::to_string(n));
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = i + 1;
  return Permutation(std::move(w));
}

Permutation Permutation::parse(std::string_view text) {
  std::vector<int> w;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == ',')) ++i;
    if (i >= text.size()) break;
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
    if (ec != std::errc{}) throw std::invalid_argument("cannot parse permutation word: " + std::string(text));
    i = static_cast<std::size_t>(ptr - text.data());
    w.push_back(value);
  }
  return Permutation(std::move(w));
}

std::vector<int> Permutation::inverse() const {
  std::vector<int> inv(word_.size());
  for (std::size_t i = 0; i < word_.size(); ++i) inv[static_cast<std::size_t>(word_[i] - 1)] = static_cast<int>(i) + 1;
  return inv;
}

std::string Permutation::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < word_.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(word_[i]);
  }
  return out;
}

RecordWord::RecordWord(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  if (bits_.empty()) throw std::invalid_argument("record word must be non-empty");
  if (bits_[0] != 1) throw std::invalid_argument("record word must start with 1");
  for (auto b : bits_)
    if (b > 1) throw std::invalid_argument("record word bits must be 0 or 1");
}

RecordWord RecordWord::parse(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c == '0' || c == '1')
      bits.push_back(static_cast<std::uint8_t>(c - '0'));
    else
      throw std::invalid_argument("record word must be a bit string: " + std::string(text));
  }
  return RecordWord(std::move(bits));
}

RecordWord RecordWord::from_positions(int n, std::span<const int> ones) {
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n), 0);
  for (int p : ones) {
    if (p < 1 || p > n) throw std::invalid_argument("record position out of range");
    bits[static_cast<std::size_t>(p - 1)] = 1;
  }
  return RecordWord(std::move(bits));
}

RecordWord RecordWord::all_ones(int n) {
  return RecordWord(std::vector<std::uint8_t>(static_cast<std::size_t>(n), 1));
}

std::vector<int> RecordWord::zero_positions() const {
  std::vector<int> z;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (!bits_[i]) z.push_back(static_cast<int>(i) + 1);
  return z;
}

std::vector<int> RecordWord::record_positions() const {
  std::vector<int> r;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) r.push_back(static_cast<int>(i) + 1);
  return r;
}

int RecordWord::last_record() const {
  for (std::size_t i = bits_.size(); i-- > 0;)
    if (bits_[i]) return static_cast<int>(i) + 1;
  return 1;
}

std::string RecordWord::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) s[i] = '1';
  return s;
}

RankVector::RankVector(std::vector<int> ranks) : ranks_(std::move(ranks)) {
  for (std::size_t i = 0; i < ranks_.size(); ++i) {
    const int r = ranks_[i];
    if (r < 1 || r > static_cast<int>(i) + 1)
      throw InvalidRank("rank r_" + std::to_string(i + 1) + " = " + std::to_string(r) + " outside [1, " +
                        std::to_string(i + 1) + "]");
  }
}

RecordWord records(const Permutation& sigma) {
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(sigma.size()), 0);
  int running_max = 0;
  for (int i = 1; i <= sigma.size(); ++i) {
    if (sigma(i) > running_max) {
      running_max = sigma(i);
      bits[static_cast<std::size_t>(i - 1)] = 1;
    }
  }
  return RecordWord(std::move(bits));
}

RankVector to_ranks(const Permutation& sigma) {
  const int n = sigma.size();
  detail::Fenwick seen(n);
  std::vector<int> r(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    r[static_cast<std::size_t>(i - 1)] = seen.prefix(sigma(i)) + 1;
    seen.add(sigma(i), 1);
  }
  return RankVector(std::move(r));
}

Permutation from_ranks(const RankVector& r) {
  const int n = r.size();
  if (n == 0) throw std::invalid_argument("empty rank vector");
  // {sigma(1..i)} is the set of values still available at step i
  auto available = detail::Fenwick::filled(n);
  std::vector<int> w(static_cast<std::size_t>(n));
  for (int i = n; i >= 1; --i) {
    const int v = available.kth(r(i));
    w[static_cast<std::size_t>(i - 1)] = v;
    available.add(v, -1);
  }
  return Permutation(std::move(w));
}

Permutation project(const Permutation& sigma, int m) {
  if (m < 1 || m > sigma.size())
    throw std::invalid_argument("projection size " + std::to_string(m) + " outside [1, " +
                                std::to_string(sigma.size()) + "]");
  std::vector<int> w;
  w.reserve(static_cast<std::size_t>(m));
  for (int v : sigma.word())
    if (v <= m) w.push_back(v);
  return Permutation(std::move(w));
}

std::vector<RecordWord> phi_path(const Permutation& sigma) {
  const int n = sigma.size();
  std::vector<RecordWord> path;
  path.reserve(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) path.push_back(records(project(sigma, j)));
  return path;
}

Permutation phi_inverse(std::span<const RecordWord> path) {
  const int n = static_cast<int>(path.size());
  if (n == 0) throw InvalidPath("empty path");
  if (path[0].size() != 1) throw InvalidPath("path must start at level 1");
  // The letter j is inserted into the projection onto S_{j-1} at the last
  // record position of the j-th word; edges pin down the rest.
  std::vector<int> word{1};
  for (int j = 2; j <= n; ++j) {
    const RecordWord& prev = path[static_cast<std::size_t>(j - 2)];
    const RecordWord& cur = path[static_cast<std::size_t>(j - 1)];
    if (cur.size() != j) throw InvalidPath("path entry " + std::to_string(j) + " has wrong length");
    const int k = cur.last_record();
    for (int i = 1; i < k; ++i)
      if (prev.is_record(i) != cur.is_record(i))
        throw InvalidPath("no edge " + prev.to_string() + " -> " + cur.to_string());
    word.insert(word.begin() + (k - 1), j);
  }
  Permutation sigma(std::move(word));
  return sigma;
}

std::vector<RecordWord> deletion_insertion_images(const RecordWord& b) {
  const int n = b.size() + 1;
  std::vector<RecordWord> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(n), 0);
    for (int i = 1; i < j; ++i) bits[static_cast<std::size_t>(i - 1)] = b.is_record(i) ? 1 : 0;
    bits[static_cast<std::size_t>(j - 1)] = 1;
    out.emplace_back(std::move(bits));
  }
  return out;
}

std::vector<PredecessorCount> record_predecessors(const RecordWord& a) {
  const int n = a.size();
  if (n < 2) throw std::invalid_argument("record_predecessors requires n >= 2");
  const int m = n - 1;
  if (m - 1 >= 62) throw std::invalid_argument("record_predecessors: level too large to list");
  const std::uint64_t count = std::uint64_t{1} << (m - 1);
  const int j = a.last_record();
  std::vector<PredecessorCount> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(m), 0);
    bits[0] = 1;
    for (int i = 2; i <= m; ++i) bits[static_cast<std::size_t>(i - 1)] = (idx >> (m - i)) & 1U;
    RecordWord b(std::move(bits));
    // inserting letter n at position j keeps the records of b below j, adds
    // j, and kills every record above j
    bool match = true;
    for (int i = 1; i < j && match; ++i) match = b.is_record(i) == a.is_record(i);
    out.push_back({std::move(b), match ? 1 : 0});
  }
  return out;
}

}  // namespace rdperm

std::size_t std::hash<rdperm::Permutation>::operator()(const rdperm::Permutation& p) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (int v : p.word()) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ULL;
  return h;
}

std::size_t std::hash<rdperm::RecordWord>::operator()(const rdperm::RecordWord& w) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (auto b : w.bits()) h = (h ^ b) * 1099511628211ULL;
  return h;
}
