#include "rdperm/alpha.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "rdperm/errors.hpp"

namespace rdperm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::optional<std::int64_t> rule_value(TailRule rule, std::int64_t j, std::int64_t shift) {
  if (j < 1) throw SpecError("rule index must be positive");
  switch (rule) {
    case TailRule::square: {
      if (j > 3037000499LL) throw std::overflow_error("alpha value exceeds 64-bit range");
      return j * j - shift;
    }
    case TailRule::power_of_two: {
      if (j > 62) throw std::overflow_error("alpha value exceeds 64-bit range");
      return (std::int64_t{1} << j) - shift;
    }
  }
  return std::nullopt;
}

double rule_value_real(TailRule rule, double j, double shift) {
  switch (rule) {
    case TailRule::square:
      return j * j - shift;
    case TailRule::power_of_two:
      return std::exp2(j) - shift;
  }
  return kInf;
}

// Integral of 1/(f(x) - shift) over [X, inf), X in the region where the integrand is positive.
double rule_tail_integral(TailRule rule, double X, double shift) {
  switch (rule) {
    case TailRule::square: {
      if (shift > 0) {
        const double r = std::sqrt(shift);
        return std::atanh(r / X) / r;
      }
      if (shift == 0) return 1.0 / X;
      const double r = std::sqrt(-shift);
      return (std::numbers::pi / 2 - std::atan(X / r)) / r;
    }
    case TailRule::power_of_two: {
      const double t = std::exp2(-X);
      if (shift == 0) return t / std::log(2.0);
      return -std::log1p(-shift * t) / (shift * std::log(2.0));
    }
  }
  return 0;
}

}  // namespace

std::string rule_name(TailRule rule) {
  switch (rule) {
    case TailRule::square:
      return "square";
    case TailRule::power_of_two:
      return "pow2";
  }
  return "?";
}

AlphaSpec AlphaSpec::finite(std::vector<std::int64_t> prefix) {
  AlphaSpec a;
  a.prefix_ = std::move(prefix);
  a.validate();
  return a;
}

AlphaSpec AlphaSpec::with_rule(std::vector<std::int64_t> prefix, TailRule rule, std::int64_t index_offset,
                               std::int64_t value_shift) {
  AlphaSpec a;
  a.prefix_ = std::move(prefix);
  a.tail_ = RuleTail{rule, index_offset, value_shift};
  a.validate();
  return a;
}

void AlphaSpec::validate() const {
  for (std::size_t i = 0; i < prefix_.size(); ++i) {
    if (prefix_[i] < 1) throw SpecError("alpha entries must be positive integers");
    if (i > 0 && prefix_[i] <= prefix_[i - 1]) throw SpecError("alpha must be strictly increasing");
  }
  if (tail_) {
    const auto K = static_cast<std::int64_t>(prefix_.size());
    if (K + 1 + tail_->index_offset < 1) throw SpecError("rule tail starts at a non-positive index");
    const auto first = rule_value(tail_->rule, K + 1 + tail_->index_offset, tail_->value_shift);
    const std::int64_t floor = prefix_.empty() ? 0 : prefix_.back();
    if (!first || *first <= floor)
      throw SpecError("rule tail does not continue the prefix increasingly and positively");
  }
}

std::optional<std::int64_t> AlphaSpec::at(std::int64_t k) const {
  if (k < 1) throw std::out_of_range("alpha index must be >= 1");
  const auto K = static_cast<std::int64_t>(prefix_.size());
  if (k <= K) return prefix_[static_cast<std::size_t>(k - 1)];
  if (!tail_) return std::nullopt;
  return rule_value(tail_->rule, k + tail_->index_offset, tail_->value_shift);
}

double AlphaSpec::at_real(std::int64_t k) const {
  const auto K = static_cast<std::int64_t>(prefix_.size());
  if (k <= K) return static_cast<double>(prefix_[static_cast<std::size_t>(k - 1)]);
  if (!tail_) return kInf;
  return rule_value_real(tail_->rule, static_cast<double>(k + tail_->index_offset),
                         static_cast<double>(tail_->value_shift));
}

std::int64_t AlphaSpec::finite_length() const {
  if (tail_) throw std::logic_error("finite_length: alpha has an infinite rule tail");
  return static_cast<std::int64_t>(prefix_.size());
}

double AlphaSpec::tail_reciprocal_bound(std::int64_t K) const {
  if (K < static_cast<std::int64_t>(prefix_.size()))
    throw std::invalid_argument("tail_reciprocal_bound: K inside the explicit prefix");
  if (!tail_) return 0;
  const double shift = static_cast<double>(tail_->value_shift);
  std::int64_t j = K + 1 + tail_->index_offset;
  double explicit_sum = 0;
  switch (tail_->rule) {
    case TailRule::square: {
      // 1/(j^2 - s) <= 2/j^2 once j^2 >= 2s, and sum_{j >= J} 1/j^2 <= 1/(J - 1)
      while (static_cast<double>(j) * static_cast<double>(j) < 2 * shift || j < 2) {
        explicit_sum += 1.0 / rule_value_real(TailRule::square, static_cast<double>(j), shift);
        ++j;
      }
      const double factor = shift > 0 ? 2.0 : 1.0;
      return (explicit_sum + factor / static_cast<double>(j - 1)) * (1 + 1e-12);
    }
    case TailRule::power_of_two: {
      while (std::exp2(static_cast<double>(j - 1)) < shift || j < 1) {
        explicit_sum += 1.0 / rule_value_real(TailRule::power_of_two, static_cast<double>(j), shift);
        ++j;
      }
      const double factor = shift > 0 ? 2.0 : 1.0;
      return (explicit_sum + factor * std::exp2(1.0 - static_cast<double>(j))) * (1 + 1e-12);
    }
  }
  throw SpecError("unknown tail rule");
}

void AlphaSpec::materialize(std::int64_t count) {
  if (!tail_) return;
  for (std::int64_t c = 0; c < count; ++c) {
    const auto k = static_cast<std::int64_t>(prefix_.size()) + 1;
    prefix_.push_back(*at(k));
  }
}

OmegaPoint OmegaPoint::alpha_p(AlphaSpec alpha, double p) {
  if (!(p > 0 && p <= 1)) throw std::invalid_argument("omega: p must lie in (0, 1]");
  return {AlphaP{std::move(alpha), p}};
}

std::string OmegaPoint::label() const {
  if (is_star()) return "star";
  const auto& ap = pair();
  std::ostringstream os;
  os << "alpha[";
  for (std::size_t i = 0; i < ap.alpha.prefix().size(); ++i) os << (i ? ";" : "") << ap.alpha.prefix()[i];
  os << '|';
  if (ap.alpha.has_infinite_tail()) {
    os << "infinite";
  } else {
    const auto& t = *ap.alpha.tail();
    os << rule_name(t.rule);
    if (t.index_offset != 0 || t.value_shift != 0) os << '+' << t.index_offset << '-' << t.value_shift;
  }
  os << "]p=" << ap.p;
  return os.str();
}

AlphaSpec update_alpha(const AlphaSpec& alpha, PositionCase chosen) {
  std::vector<std::int64_t> prefix = alpha.prefix();
  std::optional<AlphaSpec::RuleTail> tail = alpha.tail();
  AlphaSpec work = alpha;

  auto rebuild = [&](std::vector<std::int64_t> p, std::optional<AlphaSpec::RuleTail> t) {
    if (t) return AlphaSpec::with_rule(std::move(p), t->rule, t->index_offset, t->value_shift);
    return AlphaSpec::finite(std::move(p));
  };

  // drops alpha_i and lowers every later element by one
  auto remove_index = [&](std::int64_t i) {
    if (static_cast<std::int64_t>(work.prefix().size()) < i) work.materialize(i - static_cast<std::int64_t>(work.prefix().size()));
    std::vector<std::int64_t> p = work.prefix();
    std::optional<AlphaSpec::RuleTail> t = work.tail();
    p.erase(p.begin() + (i - 1));
    for (auto it = p.begin() + (i - 1); it != p.end(); ++it) *it -= 1;
    if (t) {
      t->index_offset += 1;
      t->value_shift += 1;
    }
    return rebuild(std::move(p), t);
  };

  const auto first = alpha.at(1);
  switch (chosen.kind) {
    case PositionCase::Kind::head: {
      if (first && *first < 2)
        throw std::invalid_argument("update_alpha: case head needs alpha_1 >= 2");
      for (auto& a : prefix) a -= 1;
      if (tail) tail->value_shift += 1;
      return rebuild(std::move(prefix), tail);
    }
    case PositionCase::Kind::head_with_alpha1_eq_1: {
      if (!first || *first != 1)
        throw std::invalid_argument("update_alpha: case head_with_alpha1_eq_1 needs alpha_1 = 1");
      return remove_index(1);
    }
    case PositionCase::Kind::slot: {
      if (chosen.slot_index < 1) throw std::invalid_argument("update_alpha: slot index must be >= 1");
      if (!alpha.at(chosen.slot_index))
        throw std::invalid_argument("update_alpha: slot " + std::to_string(chosen.slot_index) + " is infinite");
      return remove_index(chosen.slot_index);
    }
  }
  throw std::invalid_argument("update_alpha: unknown case");
}

NuDistribution nu_distribution(const AlphaSpec& alpha, double tolerance, std::int64_t max_entries) {
  NuDistribution out;
  if (alpha.has_infinite_tail()) {
    const auto K = alpha.finite_length();
    out.exact = true;
    out.exact_masses.assign(static_cast<std::size_t>(K) + 1, Rational(0));
    Rational suffix = 1;  // prod_{m > k} (1 - 1/alpha_m)
    for (std::int64_t k = K; k >= 1; --k) {
      const Rational a(static_cast<long>(*alpha.at(k)));
      out.exact_masses[static_cast<std::size_t>(k)] = suffix / a;
      suffix *= (a - 1) / a;
    }
    out.exact_masses[0] = suffix;
    for (auto& q : out.exact_masses) {
      q.canonicalize();
      out.masses.push_back(q.get_d());
    }
    return out;
  }

  if (!(tolerance > 0)) throw std::invalid_argument("nu_distribution: tolerance must be positive");
  const auto K = static_cast<std::int64_t>(alpha.prefix().size());
  const auto& rt = *alpha.tail();
  const double shift = static_cast<double>(rt.value_shift);

  // Beyond index D the log-product is bracketed by integrals of 1/alpha:
  //   I(D+1) <= sum_{m>D} -log(1 - 1/alpha_m) <= I(D) / (1 - 1/alpha_{D+1}).
  auto bracket = [&](std::int64_t D) {
    const double x0 = static_cast<double>(D + 1 + rt.index_offset);
    const double lo = rule_tail_integral(rt.rule, x0, shift);
    const double hi = rule_tail_integral(rt.rule, x0 - 1, shift) / (1 - 1 / alpha.at_real(D + 1));
    return std::pair{lo, hi};
  };
  std::int64_t D = std::max<std::int64_t>(K + 4, 16);
  while (alpha.at_real(D) < 4 * std::max(shift, 1.0)) D *= 2;
  constexpr std::int64_t kMaxDirect = 50'000'000;
  while (D < kMaxDirect) {
    auto [lo, hi] = bracket(D);
    if ((hi - lo) / 2 <= tolerance / 4) break;
    D *= 2;
  }
  const auto [lo, hi] = bracket(D);
  const long double log_remainder = (static_cast<long double>(lo) + hi) / 2;
  const double log_error = (hi - lo) / 2;

  // T[k] = prod_{m > k} (1 - 1/alpha_m) computed downward from D
  long double T = std::exp(-log_remainder);
  std::vector<long double> suffix;  // suffix[k] = T(k) for k <= listing limit
  const std::int64_t listing_cap = std::min<std::int64_t>(D, std::max<std::int64_t>(K, max_entries));
  suffix.resize(static_cast<std::size_t>(listing_cap) + 1);
  for (std::int64_t k = D; k >= 1; --k) {
    if (k <= listing_cap) suffix[static_cast<std::size_t>(k)] = T;
    T *= 1.0L - 1.0L / static_cast<long double>(alpha.at_real(k));
  }
  suffix[0] = T;

  // list until the lumped remainder is below tolerance
  std::int64_t L = K;
  while (L < listing_cap && 1.0L - suffix[static_cast<std::size_t>(L)] > tolerance) ++L;
  out.masses.push_back(static_cast<double>(suffix[0]));
  for (std::int64_t k = 1; k <= L; ++k)
    out.masses.push_back(static_cast<double>(suffix[static_cast<std::size_t>(k)] /
                                             static_cast<long double>(alpha.at_real(k))));
  out.tail_mass = static_cast<double>(1.0L - suffix[static_cast<std::size_t>(L)]);
  const double rounding = static_cast<double>(D) * 4 * std::numeric_limits<long double>::epsilon();
  out.error_bound = std::expm1(log_error) + rounding;
  return out;
}

}  // namespace rdperm
