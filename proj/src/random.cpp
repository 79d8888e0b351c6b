#include "rdperm/random.hpp"

#include <cmath>
#include <stdexcept>

namespace rdperm {

namespace {

std::seed_seq make_seed_seq(std::uint64_t a, std::uint64_t b) {
  return std::seed_seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                       static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) {
  auto seq = make_seed_seq(seed, 0x9e3779b97f4a7c15ULL);
  engine_.seed(seq);
}

RandomStream RandomStream::child(std::uint64_t root_seed, std::uint64_t index) {
  RandomStream stream(0);
  auto seq = make_seed_seq(root_seed, index + 1);
  stream.engine_.seed(seq);
  return stream;
}

std::int64_t RandomStream::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
  const std::uint64_t range = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  if (range == UINT64_MAX) return static_cast<std::int64_t>(next());
  const std::uint64_t span = range + 1;
  // reject the incomplete top block so every residue is equally likely
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % span + 1) % span;
  std::uint64_t x;
  do {
    x = next();
  } while (x > limit);
  return lo + static_cast<std::int64_t>(x % span);
}

double RandomStream::uniform01() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double RandomStream::exponential() { return -std::log(uniform_open_closed()); }

}  // namespace rdperm
