#include "rdperm/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "rdperm/branching_graph.hpp"
#include "rdperm/errors.hpp"

namespace rdperm {

OrderPrefix::OrderPrefix(std::vector<std::int64_t> positions) : positions_(std::move(positions)) {
  std::vector<std::int64_t> sorted = positions_;
  std::sort(sorted.begin(), sorted.end());
  if (!sorted.empty() && sorted.front() < 1) throw std::invalid_argument("order prefix: positions must be >= 1");
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("order prefix: repeated position");
}

Rational L_statistic(const RecordWord& rho) {
  Rational L = 1;
  for (int l : rho.zero_positions()) {
    if (l == 2) return 0;
    L *= make_rational(l - 2, l - 1);
  }
  L.canonicalize();
  return L;
}

double L_statistic_real(const RecordWord& rho) {
  double L = 1;
  for (int l : rho.zero_positions()) L *= 1.0 - 1.0 / (l - 1);
  return L;
}

double reduced_L_real(const RecordWord& rho) {
  double L = 1;
  for (int l : rho.zero_positions())
    if (l > 2) L *= 1.0 - 1.0 / (l - 1);
  return L;
}

Permutation sample_elementary(const RecordWord& rho, RandomStream& rng) {
  const int n = rho.size();
  std::vector<int> pool(static_cast<std::size_t>(n));  // unused values
  std::vector<int> where(static_cast<std::size_t>(n) + 1);
  std::iota(pool.begin(), pool.end(), 1);
  for (int v = 1; v <= n; ++v) where[static_cast<std::size_t>(v)] = v - 1;
  std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);

  auto take = [&](int v) {
    const std::size_t i = static_cast<std::size_t>(where[static_cast<std::size_t>(v)]);
    const int last = pool.back();
    pool[i] = last;
    where[static_cast<std::size_t>(last)] = static_cast<int>(i);
    pool.pop_back();
    used[static_cast<std::size_t>(v)] = true;
    return v;
  };

  std::vector<int> word(static_cast<std::size_t>(n));
  int top = n;
  int block_end = n;  // last position of the non-record block following the current record
  for (int m = n; m >= 1; --m) {
    if (!rho.is_record(m)) continue;
    while (used[static_cast<std::size_t>(top)]) --top;
    word[static_cast<std::size_t>(m - 1)] = take(top);
    for (int pos = m + 1; pos <= block_end; ++pos) {
      const auto i = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(pool.size()) - 1));
      word[static_cast<std::size_t>(pos - 1)] = take(pool[i]);
    }
    block_end = m - 1;
  }
  return Permutation(std::move(word));
}

Rational elementary_pmf(const RecordWord& rho, const Permutation& sigma) {
  if (rho.size() != sigma.size()) throw std::invalid_argument("elementary_pmf: sizes differ");
  if (records(sigma) != rho) return 0;
  Rational q(BigInt(1), dimension(rho));
  q.canonicalize();
  return q;
}

namespace {

// Law of the next letter given the occupied positions: the smallest free
// position gets prod_i (1 - 1/(l'_i - 1 - w(l'_i))), a free zero l'_j gets
// 1/(l'_j - 1 - w(l'_j)) times the same product over later free zeros, where
// w(x) counts occupied positions below x.
PositionLaw position_law(const RecordWord& rho, const std::vector<bool>& occupied) {
  const int n = rho.size();
  int first_free = 0;
  for (int x = 1; x <= n; ++x)
    if (!occupied[static_cast<std::size_t>(x)]) {
      first_free = x;
      break;
    }
  if (first_free == 0) throw ConditioningError("position law: every position is occupied");

  std::vector<std::pair<int, int>> zeros;  // (position, renumbered position - 1)
  int w = 0;
  for (int x = 1; x <= n; ++x) {
    if (occupied[static_cast<std::size_t>(x)]) {
      ++w;
      continue;
    }
    if (!rho.is_record(x)) zeros.emplace_back(x, x - 1 - w);
  }

  PositionLaw law;
  Rational suffix = 1;
  for (auto it = zeros.rbegin(); it != zeros.rend(); ++it) {
    const auto [x, d] = *it;
    if (d < 1) throw ConditioningError("position law: smallest free position is a non-record");
    Rational mass = suffix / d;
    mass.canonicalize();
    if (mass != 0) law[x] = mass;
    suffix *= make_rational(d - 1, d);
  }
  suffix.canonicalize();
  if (suffix != 0) law[first_free] = suffix;
  return law;
}

}  // namespace

PositionLaw position_of_one_distribution(const RecordWord& rho) {
  return position_law(rho, std::vector<bool>(static_cast<std::size_t>(rho.size()) + 1, false));
}

PositionLaw conditional_position_distribution(const RecordWord& rho, const OrderPrefix& placed) {
  const int n = rho.size();
  if (static_cast<int>(placed.size()) >= n)
    throw std::invalid_argument("conditional_position_distribution: t exceeds n");
  std::vector<bool> occupied(static_cast<std::size_t>(n) + 1, false);
  for (std::size_t j = 0; j < placed.size(); ++j) {
    const std::int64_t s = placed[j];
    if (s > n) throw std::invalid_argument("conditional_position_distribution: position beyond n");
    const auto law = position_law(rho, occupied);
    if (!law.contains(s))
      throw ConditioningError("conditioning on a prefix of probability zero (letter " + std::to_string(j + 1) +
                              " at position " + std::to_string(s) + ")");
    occupied[static_cast<std::size_t>(s)] = true;
  }
  return position_law(rho, occupied);
}

ExactDistribution elementary_projection_exact(const RecordWord& rho, int k, std::uint64_t budget) {
  const int n = rho.size();
  if (k < 1 || k > n) throw std::invalid_argument("elementary_projection: k out of range");
  const BigInt dim = dimension(rho);
  if (dim > BigInt(std::to_string(budget)))
    throw BudgetExceeded("elementary_projection: fiber too large",
                         dim.fits_ulong_p() ? dim.get_ui() : std::numeric_limits<std::uint64_t>::max(), budget);

  Rational each(BigInt(1), dim);
  each.canonicalize();
  std::vector<int> ranks(static_cast<std::size_t>(n));
  const std::vector<int> zeros = rho.zero_positions();
  for (int i = 1; i <= n; ++i) ranks[static_cast<std::size_t>(i - 1)] = rho.is_record(i) ? i : 1;

  ExactDistribution out(k);
  while (true) {
    out.add(project(from_ranks(RankVector(ranks)), k), each);
    // odometer over the zero positions, r_l in [1, l-1]
    std::size_t z = 0;
    for (; z < zeros.size(); ++z) {
      int& r = ranks[static_cast<std::size_t>(zeros[z] - 1)];
      if (r < zeros[z] - 1) {
        ++r;
        break;
      }
      r = 1;
    }
    if (z == zeros.size()) break;
  }
  return out;
}

ApproxDistribution empirical_distribution(int k, std::int64_t samples, std::uint64_t seed,
                                          const std::function<Permutation(RandomStream&)>& draw,
                                          Execution execution) {
  if (samples < 1) throw std::invalid_argument("empirical_distribution: need at least one sample");
  constexpr std::int64_t kChunk = 4096;
  const std::int64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<std::map<Permutation, std::int64_t>> counts(static_cast<std::size_t>(chunks));

  auto run_chunk = [&](std::int64_t c) {
    RandomStream rng = RandomStream::child(seed, static_cast<std::uint64_t>(c));
    const std::int64_t count = std::min(kChunk, samples - c * kChunk);
    auto& local = counts[static_cast<std::size_t>(c)];
    for (std::int64_t s = 0; s < count; ++s) ++local[draw(rng)];
  };

  if (execution == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    for (std::int64_t c = 0; c < chunks; ++c) run_chunk(c);
  }

  std::map<Permutation, std::int64_t> total;
  for (const auto& local : counts)
    for (const auto& [sigma, c] : local) total[sigma] += c;
  ApproxDistribution out(k);
  for (const auto& [sigma, c] : total) out.add(sigma, static_cast<double>(c) / static_cast<double>(samples));
  return out;
}

ApproxDistribution elementary_projection_mc(const RecordWord& rho, int k, std::int64_t samples, std::uint64_t seed,
                                            Execution execution) {
  if (k < 1 || k > rho.size()) throw std::invalid_argument("elementary_projection: k out of range");
  return empirical_distribution(
      k, samples, seed, [&](RandomStream& rng) { return project(sample_elementary(rho, rng), k); }, execution);
}

Permutation sample_uniform(int n, RandomStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_uniform: n must be >= 1");
  std::vector<int> ranks(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) ranks[static_cast<std::size_t>(i - 1)] = static_cast<int>(rng.uniform_int(1, i));
  return from_ranks(RankVector(std::move(ranks)));
}

// ---------------------------------------------------------------------------
// dual algorithm

DualSampler::DualSampler(AlphaSpec alpha) : base_(std::move(alpha)) {
  if (auto t = base_.tail(); t && t->index_offset < 0)
    throw SpecError("dual sampler: rule tails need a non-negative index offset");
}

std::int64_t DualSampler::surviving_index(std::int64_t k) const {
  // j_k = k + c, c the number of deleted indices below j_k
  std::size_t c = 0;
  while (c < deleted_.size() && deleted_[c] <= k + static_cast<std::int64_t>(c)) ++c;
  return k + static_cast<std::int64_t>(c);
}

std::optional<std::int64_t> DualSampler::alpha_at(std::int64_t k) const {
  if (k < 1) throw std::out_of_range("alpha index must be >= 1");
  const std::int64_t j = surviving_index(k);
  const auto a = base_.at(j);
  if (!a) return std::nullopt;
  return *a - heads_ - (j - k);
}

double DualSampler::alpha_real(std::int64_t k) const {
  const std::int64_t j = surviving_index(k);
  return base_.at_real(j) - static_cast<double>(heads_) - static_cast<double>(j - k);
}

namespace {

double rule_real(TailRule rule, double j) { return rule == TailRule::square ? j * j : std::exp2(j); }

// Poisson majorant mu_k = 1/((k-a)(k-a+1)) for the firing intensities
// lambda_k = -log(1 - 1/alpha_k) <= 1/(alpha_k - 1) on k > B. It dominates once
// lower(k) - 1 >= (k-a)(k-a+1) for a lower bound lower(k) <= alpha_k that
// grows at least as fast as the right-hand side; both rules qualify with
// these choices of a.
struct Majorant {
  std::int64_t a;
  std::int64_t B;
};

Majorant tail_majorant(TailRule rule, std::int64_t offset, double shift, std::int64_t B_min) {
  std::int64_t a = 1;
  if (rule == TailRule::square) a = static_cast<std::int64_t>(std::floor(std::sqrt(std::max(shift, 0.0) + 1))) + 1;
  auto ok = [&](std::int64_t k) {
    const double d = static_cast<double>(k - a);
    return rule_real(rule, static_cast<double>(k + offset)) - shift - 1 >= d * (d + 1);
  };
  std::int64_t lo = std::max(B_min, a);
  if (ok(lo + 1)) return {a, lo};
  std::int64_t step = 1;
  while (!ok(lo + step + 1)) step *= 2;
  std::int64_t hi = lo + step;
  lo += step / 2;
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    (ok(mid + 1) ? hi : lo) = mid;
  }
  return {a, hi};
}

}  // namespace

std::int64_t DualSampler::sample_nu(RandomStream& rng) const {
  const auto K0 = static_cast<std::int64_t>(base_.prefix().size());
  std::int64_t B;
  if (base_.has_infinite_tail()) {
    // finite entries are the surviving indices <= K0
    B = K0 - static_cast<std::int64_t>(std::upper_bound(deleted_.begin(), deleted_.end(), K0) - deleted_.begin());
  } else {
    const auto& t = *base_.tail();
    // alpha_k >= A_k - H, and A_k is the rule value beyond the explicit prefix
    const double shift = static_cast<double>(t.value_shift + heads_);
    const Majorant m = tail_majorant(t.rule, t.index_offset, shift, K0);
    B = m.B;
    // majorant points on (B, inf) at x = a - 1 + 1/s for a unit-rate clock s; the
    // first accepted point is the largest firing index
    const double horizon = 1.0 / static_cast<double>(B + 1 - m.a);
    for (double s = rng.exponential(); s < horizon; s += rng.exponential()) {
      auto k = static_cast<std::int64_t>(std::ceil(static_cast<double>(m.a - 1) + 1.0 / s));
      if (k <= B) k = B + 1;
      const double d = static_cast<double>(k - m.a);
      const double mu = 1.0 / (d * (d + 1));
      const double lambda = -std::log1p(-1.0 / alpha_real(k));
      if (rng.uniform01() * mu < lambda) return k;
    }
  }
  if (B <= 0) return 0;
  // largest firing index in 1..B: nu = k iff Q_k <= U < Q_{k+1}, Q_k = prod_{m>=k} (1 - 1/alpha_m)
  const double U = rng.uniform01();
  double Q = 1;
  std::int64_t j = surviving_index(B);
  auto d = std::lower_bound(deleted_.begin(), deleted_.end(), j);  // deleted indices >= j
  for (std::int64_t k = B; k >= 1; --k) {
    const double a = base_.at_real(j) - static_cast<double>(heads_) - static_cast<double>(j - k);
    Q *= 1.0 - 1.0 / a;
    if (U >= Q) return k;
    // step to the previous surviving index
    --j;
    while (d != deleted_.begin() && *(d - 1) == j) {
      --d;
      --j;
    }
  }
  return 0;
}

std::int64_t DualSampler::unused_position(std::int64_t y) const {
  std::int64_t candidate = filled_ + y;
  for (std::int64_t u : scattered_) {
    if (u > candidate) break;
    ++candidate;
  }
  return candidate;
}

void DualSampler::occupy(std::int64_t position) {
  if (position == filled_ + 1) {
    ++filled_;
    while (!scattered_.empty() && *scattered_.begin() == filled_ + 1) {
      scattered_.erase(scattered_.begin());
      ++filled_;
    }
  } else {
    scattered_.insert(position);
  }
}

std::int64_t DualSampler::next(RandomStream& rng) {
  const std::int64_t nu = sample_nu(rng);
  std::int64_t y = 1;
  if (nu == 0) {
    ++heads_;
  } else {
    y = *alpha_at(nu) + 1;
    const std::int64_t j = surviving_index(nu);
    deleted_.insert(std::upper_bound(deleted_.begin(), deleted_.end(), j), j);
  }
  const std::int64_t position = unused_position(y);
  occupy(position);
  ++placed_;
  return position;
}

OrderPrefix sample_order_prefix_dual(const AlphaSpec& alpha, std::int64_t m, RandomStream& rng) {
  if (m < 1) throw std::invalid_argument("sample_order_prefix_dual: m must be >= 1");
  DualSampler sampler(alpha);
  std::vector<std::int64_t> positions;
  positions.reserve(static_cast<std::size_t>(m));
  for (std::int64_t t = 0; t < m; ++t) positions.push_back(sampler.next(rng));
  return OrderPrefix(std::move(positions));
}

Permutation prefix_to_projection(const OrderPrefix& prefix, int n) {
  if (n < 1) throw std::invalid_argument("prefix_to_projection: n must be >= 1");
  if (static_cast<int>(prefix.size()) < n)
    throw InsufficientPrefix("prefix_to_projection: prefix lists " + std::to_string(prefix.size()) +
                             " letters, need " + std::to_string(n));
  std::vector<int> word(static_cast<std::size_t>(n));
  std::iota(word.begin(), word.end(), 1);
  std::sort(word.begin(), word.end(), [&](int u, int v) {
    return prefix[static_cast<std::size_t>(u - 1)] < prefix[static_cast<std::size_t>(v - 1)];
  });
  return Permutation(std::move(word));
}

namespace {

Permutation sample_alpha_one(const AlphaSpec& alpha, int n, RandomStream& rng) {
  return prefix_to_projection(sample_order_prefix_dual(alpha, n, rng), n);
}

}  // namespace

Permutation sample_projection(const OmegaPoint& omega, int n, RandomStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_projection: n must be >= 1");
  if (omega.is_star()) return sample_uniform(n, rng);
  const auto& [alpha, p] = omega.pair();
  if (p == 1.0) return sample_alpha_one(alpha, n, rng);

  std::vector<int> first, second;
  for (int j = 1; j <= n; ++j) (rng.bernoulli(p) ? first : second).push_back(j);
  std::vector<int> word;
  word.reserve(static_cast<std::size_t>(n));
  if (!first.empty()) {
    const Permutation s1 = sample_alpha_one(alpha, static_cast<int>(first.size()), rng);
    for (int v : s1.word()) word.push_back(first[static_cast<std::size_t>(v - 1)]);
  }
  if (!second.empty()) {
    const Permutation s2 = sample_uniform(static_cast<int>(second.size()), rng);
    for (int v : s2.word()) word.push_back(second[static_cast<std::size_t>(v - 1)]);
  }
  return Permutation(std::move(word));
}

namespace {

struct DualState {
  AlphaSpec alpha;
  std::int64_t filled = 0;
  std::set<std::int64_t> scattered;
  std::vector<std::int64_t> positions;
};

std::int64_t unused(const DualState& s, std::int64_t y) {
  std::int64_t c = s.filled + y;
  for (std::int64_t u : s.scattered) {
    if (u > c) break;
    ++c;
  }
  return c;
}

void enumerate_branches(const DualState& state, int n, const Rational& mass, ExactDistribution& out) {
  if (static_cast<int>(state.positions.size()) == n) {
    out.add(prefix_to_projection(OrderPrefix(state.positions), n), mass);
    return;
  }
  const NuDistribution nu = nu_distribution(state.alpha);
  for (std::size_t k = 0; k < nu.exact_masses.size(); ++k) {
    if (nu.exact_masses[k] == 0) continue;
    DualState next = state;
    std::int64_t y = 1;
    if (k == 0) {
      next.alpha = update_alpha(state.alpha, PositionCase::head());
    } else {
      const auto i = static_cast<std::int64_t>(k);
      y = *state.alpha.at(i) + 1;
      next.alpha = update_alpha(state.alpha, PositionCase::slot(i));
    }
    const std::int64_t pos = unused(next, y);
    if (pos == next.filled + 1) {
      ++next.filled;
      while (!next.scattered.empty() && *next.scattered.begin() == next.filled + 1) {
        next.scattered.erase(next.scattered.begin());
        ++next.filled;
      }
    } else {
      next.scattered.insert(pos);
    }
    next.positions.push_back(pos);
    Rational m = mass * nu.exact_masses[k];
    m.canonicalize();
    enumerate_branches(next, n, m, out);
  }
}

}  // namespace

ExactDistribution exact_marginal(const OmegaPoint& omega, int n, std::uint64_t budget) {
  if (n < 1) throw std::invalid_argument("exact_marginal: n must be >= 1");
  if (omega.is_star()) throw std::invalid_argument("exact_marginal: needs an (alpha, p) parameter");
  const auto& [alpha, p] = omega.pair();
  if (p != 1.0) throw std::invalid_argument("exact_marginal: needs p = 1");
  if (!alpha.has_infinite_tail()) throw std::invalid_argument("exact_marginal: needs a finite alpha");

  const auto K = static_cast<std::uint64_t>(alpha.finite_length());
  std::uint64_t required = 1;
  for (int i = 0; i < n; ++i) {
    if (required > std::numeric_limits<std::uint64_t>::max() / (K + 1)) {
      required = std::numeric_limits<std::uint64_t>::max();
      break;
    }
    required *= K + 1;
  }
  if (required > budget) throw BudgetExceeded("exact_marginal: too many branches", required, budget);

  ExactDistribution out(n);
  enumerate_branches(DualState{alpha, 0, {}, {}}, n, Rational(1), out);
  return out;
}

ExactDistribution uniform_distribution(int n) {
  if (n < 1) throw std::invalid_argument("uniform_distribution: n must be >= 1");
  std::vector<int> word(static_cast<std::size_t>(n));
  std::iota(word.begin(), word.end(), 1);
  BigInt count = 1;
  for (int i = 2; i <= n; ++i) count *= i;
  Rational each(BigInt(1), count);
  each.canonicalize();
  ExactDistribution out(n);
  do out.add(Permutation(word), each);
  while (std::next_permutation(word.begin(), word.end()));
  return out;
}

ApproxDistribution limit_marginal(const OmegaPoint& omega, int k) {
  if (k < 1) throw std::invalid_argument("limit_marginal: k must be >= 1");
  if (omega.is_star()) return uniform_distribution(k).to_double();
  const auto& [alpha, p] = omega.pair();
  const OmegaPoint one = OmegaPoint::alpha_p(alpha, 1.0);
  if (p == 1.0) return exact_marginal(one, k).to_double();
  if (k > 16) throw std::invalid_argument("limit_marginal: k too large for the subset mixture");

  ApproxDistribution out(k);
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    std::vector<int> first, second;
    for (int j = 1; j <= k; ++j) ((mask >> (j - 1)) & 1u ? first : second).push_back(j);
    const auto m1 = static_cast<int>(first.size());
    const auto m2 = static_cast<int>(second.size());
    const double weight = std::pow(p, m1) * std::pow(1 - p, m2);

    std::vector<std::pair<std::vector<int>, double>> heads;
    if (m1 == 0) {
      heads.push_back({{}, 1.0});
    } else {
      const auto inner = exact_marginal(one, m1);
      for (const auto& [s1, q] : inner.support()) {
        std::vector<int> w;
        for (int v : s1.word()) w.push_back(first[static_cast<std::size_t>(v - 1)]);
        heads.push_back({std::move(w), q.get_d()});
      }
    }
    double tails = 1;
    for (int i = 2; i <= m2; ++i) tails *= i;
    std::vector<int> order = second;
    do {
      for (const auto& [head, q] : heads) {
        std::vector<int> word = head;
        word.insert(word.end(), order.begin(), order.end());
        out.add(Permutation(std::move(word)), weight * q / tails);
      }
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return out;
}

}  // namespace rdperm
