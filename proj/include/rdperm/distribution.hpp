#pragma once

#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>

#include "rdperm/permutation.hpp"
#include "rdperm/rational.hpp"

namespace rdperm {

namespace detail {
inline double as_double(const Rational& q) { return q.get_d(); }
inline double as_double(double x) { return x; }
}  // namespace detail

/// Probability measure on S_n with finite support.
///
/// `Prob` is Rational for exact distributions and double for floating ones;
/// the two kinds export differently and are checked to different standards.
template <typename Prob>
class FiniteDistribution {
 public:
  using Map = std::map<Permutation, Prob>;

  explicit FiniteDistribution(int n) : n_(n) {}

  int size() const noexcept { return n_; }

  /// Adds mass to sigma. Entries with zero mass are dropped.
  void add(const Permutation& sigma, const Prob& mass) {
    if (sigma.size() != n_) throw std::invalid_argument("distribution: permutation of wrong size");
    auto& slot = masses_[sigma];
    slot += mass;
    if (slot == 0) masses_.erase(sigma);
  }

  Prob operator()(const Permutation& sigma) const {
    auto it = masses_.find(sigma);
    return it == masses_.end() ? Prob(0) : it->second;
  }

  const Map& support() const noexcept { return masses_; }

  Prob total() const {
    Prob t = 0;
    for (const auto& [sigma, mass] : masses_) t += mass;
    return t;
  }

  /// Exact distributions must sum to exactly 1, floating ones within 1e-12.
  bool is_normalized() const {
    for (const auto& [sigma, mass] : masses_)
      if (mass < 0) return false;
    if constexpr (std::is_same_v<Prob, double>)
      return std::abs(total() - 1.0) <= 1e-12;
    else
      return total() == 1;
  }

  FiniteDistribution<double> to_double() const {
    FiniteDistribution<double> out(n_);
    for (const auto& [sigma, mass] : masses_) out.add(sigma, detail::as_double(mass));
    return out;
  }

  bool operator==(const FiniteDistribution&) const = default;

 private:
  int n_;
  Map masses_;
};

using ExactDistribution = FiniteDistribution<Rational>;
using ApproxDistribution = FiniteDistribution<double>;

/// Total variation distance (half the L1 distance).
template <typename P, typename Q>
double total_variation(const FiniteDistribution<P>& a, const FiniteDistribution<Q>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("total_variation: sizes differ");
  double sum = 0;
  for (const auto& [sigma, mass] : a.support())
    sum += std::abs(detail::as_double(mass) - detail::as_double(b(sigma)));
  for (const auto& [sigma, mass] : b.support())
    if (a(sigma) == 0) sum += std::abs(detail::as_double(mass));
  return sum / 2;
}

/// Lines "<word> <num>/<den>" in lexicographic order of words.
inline void write_distribution(std::ostream& out, const ExactDistribution& d) {
  for (const auto& [sigma, mass] : d.support()) out << sigma.to_string() << ' ' << to_string(mass) << '\n';
}

/// Lines "<word> <float>" in lexicographic order of words.
void write_distribution(std::ostream& out, const ApproxDistribution& d);

}  // namespace rdperm
