#pragma once

#include <cstdint>
#include <random>

namespace rdperm {

/// Seeded 64-bit random stream.
///
/// Integer and real draws are implemented here rather than through the
/// <random> distributions so that a given seed produces the same sequence
/// with every standard library.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  /// Independent child stream number `index` of a root seed.
  static RandomStream child(std::uint64_t root_seed, std::uint64_t index);

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  /// Uniform real in [0, 1) with 53 random bits.
  double uniform01();

  /// Uniform real in (0, 1].
  double uniform_open_closed() { return 1.0 - uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

  /// Standard exponential variate.
  double exponential();

 private:
  std::mt19937_64 engine_;
};

}  // namespace rdperm
