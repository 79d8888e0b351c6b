#include "rdperm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "rdperm/errors.hpp"

namespace rdperm::oracle {

namespace {

std::uint64_t factorial_saturating(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) {
    if (f > UINT64_MAX / static_cast<std::uint64_t>(i)) return UINT64_MAX;
    f *= static_cast<std::uint64_t>(i);
  }
  return f;
}

// raw record scan, kept separate from the library's records()
std::vector<std::uint8_t> record_bits(std::span<const int> word) {
  std::vector<std::uint8_t> bits(word.size(), 0);
  int best = 0;
  for (std::size_t i = 0; i < word.size(); ++i)
    if (word[i] > best) {
      best = word[i];
      bits[i] = 1;
    }
  return bits;
}

template <typename Prob>
FiniteDistribution<Prob> project_all(const FiniteDistribution<Prob>& measure, int k) {
  if (k < 1 || k > measure.size()) throw std::invalid_argument("oracle_projection: k out of range");
  FiniteDistribution<Prob> out(k);
  for (const auto& [sigma, mass] : measure.support()) {
    std::vector<int> w;
    for (int v : sigma.word())
      if (v <= k) w.push_back(v);
    out.add(Permutation(std::move(w)), mass);
  }
  return out;
}

template <typename Prob>
bool record_dependent(const FiniteDistribution<Prob>& measure, EnumerationBudget budget) {
  std::map<std::vector<std::uint8_t>, Prob> first_mass;
  bool ok = true;
  for_each_permutation(
      measure.size(),
      [&](const Permutation& sigma) {
        if (!ok) return;
        const auto bits = record_bits(sigma.word());
        const Prob mass = measure(sigma);
        auto [it, inserted] = first_mass.try_emplace(bits, mass);
        if (inserted) return;
        if constexpr (std::is_same_v<Prob, double>) {
          if (std::abs(it->second - mass) > 1e-12) ok = false;
        } else {
          if (it->second != mass) ok = false;
        }
      },
      budget);
  return ok;
}

}  // namespace

void for_each_permutation(int n, const std::function<void(const Permutation&)>& visit, EnumerationBudget budget) {
  if (n < 1) throw std::invalid_argument("for_each_permutation: n must be >= 1");
  const std::uint64_t count = factorial_saturating(n);
  if (count > budget.max_permutations)
    throw BudgetExceeded("enumeration of S_" + std::to_string(n), count, budget.max_permutations);
  std::vector<int> word(static_cast<std::size_t>(n));
  std::iota(word.begin(), word.end(), 1);
  do visit(Permutation(word));
  while (std::next_permutation(word.begin(), word.end()));
}

std::vector<Permutation> enumerate_record_fiber(const RecordWord& rho, EnumerationBudget budget) {
  std::vector<Permutation> fiber;
  const auto target = rho.bits();
  for_each_permutation(
      rho.size(),
      [&](const Permutation& sigma) {
        const auto bits = record_bits(sigma.word());
        if (std::equal(bits.begin(), bits.end(), target.begin(), target.end())) fiber.push_back(sigma);
      },
      budget);
  return fiber;
}

PositionLaw oracle_position_distribution(const RecordWord& rho, const OrderPrefix& placed, EnumerationBudget budget) {
  const auto t = placed.size() + 1;
  if (static_cast<int>(t) > rho.size()) throw std::invalid_argument("oracle_position_distribution: t exceeds n");
  std::map<std::int64_t, long> counts;
  long total = 0;
  for (const Permutation& sigma : enumerate_record_fiber(rho, budget)) {
    const auto inv = sigma.inverse();
    bool match = true;
    for (std::size_t j = 0; j < placed.size() && match; ++j) match = inv[j] == placed[j];
    if (!match) continue;
    ++counts[inv[t - 1]];
    ++total;
  }
  if (total == 0) throw ConditioningError("oracle: conditioning event is empty");
  PositionLaw law;
  for (const auto& [h, c] : counts) law[h] = make_rational(c, total);
  return law;
}

std::map<std::vector<std::int64_t>, PositionLaw> oracle_position_laws(const RecordWord& rho, int max_prefix,
                                                                      EnumerationBudget budget) {
  std::map<std::vector<std::int64_t>, std::map<std::int64_t, long>> counts;
  for (const Permutation& sigma : enumerate_record_fiber(rho, budget)) {
    const auto inv = sigma.inverse();
    std::vector<std::int64_t> prefix;
    for (int t = 1; t <= std::min(max_prefix + 1, rho.size()); ++t) {
      ++counts[prefix][inv[static_cast<std::size_t>(t - 1)]];
      prefix.push_back(inv[static_cast<std::size_t>(t - 1)]);
    }
  }
  std::map<std::vector<std::int64_t>, PositionLaw> laws;
  for (const auto& [prefix, c] : counts) {
    long total = 0;
    for (const auto& [h, k] : c) total += k;
    auto& law = laws[prefix];
    for (const auto& [h, k] : c) law[h] = make_rational(k, total);
  }
  return laws;
}

ExactDistribution elementary_measure(const RecordWord& rho, EnumerationBudget budget) {
  const auto fiber = enumerate_record_fiber(rho, budget);
  ExactDistribution out(rho.size());
  const Rational each = make_rational(1, static_cast<long>(fiber.size()));
  for (const auto& sigma : fiber) out.add(sigma, each);
  return out;
}

ExactDistribution oracle_projection(const ExactDistribution& measure, int k) { return project_all(measure, k); }
ApproxDistribution oracle_projection(const ApproxDistribution& measure, int k) { return project_all(measure, k); }

bool is_record_dependent(const ExactDistribution& measure, EnumerationBudget budget) {
  return record_dependent(measure, budget);
}
bool is_record_dependent(const ApproxDistribution& measure, EnumerationBudget budget) {
  return record_dependent(measure, budget);
}

ExactDistribution ewens_records(int n, const Rational& theta, EnumerationBudget budget) {
  std::vector<std::pair<Permutation, Rational>> weights;
  Rational total = 0;
  for_each_permutation(
      n,
      [&](const Permutation& sigma) {
        const auto bits = record_bits(sigma.word());
        Rational w = 1;
        for (auto b : bits)
          if (b) w *= theta;
        total += w;
        weights.emplace_back(sigma, w);
      },
      budget);
  ExactDistribution out(n);
  for (auto& [sigma, w] : weights) {
    Rational q = w / total;
    q.canonicalize();
    out.add(sigma, q);
  }
  return out;
}

void write_golden(std::ostream& out, int n, EnumerationBudget budget) {
  std::map<std::vector<std::uint8_t>, std::vector<Permutation>> fibers;
  for_each_permutation(n, [&](const Permutation& sigma) { fibers[record_bits(sigma.word())].push_back(sigma); },
                       budget);
  for (const auto& [bits, members] : fibers) {
    const RecordWord rho{std::vector<std::uint8_t>(bits)};
    out << "fiber " << rho.to_string() << ' ' << members.size() << '\n';
    for (const auto& sigma : members) out << "  " << sigma.to_string() << '\n';
    const Rational each = make_rational(1, static_cast<long>(members.size()));
    for (int k = 1; k < n; ++k) {
      ExactDistribution d(n);
      for (const auto& sigma : members) d.add(sigma, each);
      out << "projection " << rho.to_string() << " k=" << k << '\n';
      const auto projected = project_all(d, k);
      for (const auto& [tau, mass] : projected.support())
        out << "  " << tau.to_string() << ' ' << to_string(mass) << '\n';
    }
  }
}

}  // namespace rdperm::oracle
