#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <vector>

#include "rdperm/distribution.hpp"
#include "rdperm/measures.hpp"
#include "rdperm/permutation.hpp"

namespace rdperm::oracle {

// Ground truth by full scans of S_n. Nothing here uses the closed-form
// counts or position laws, so agreement with them is evidence.

struct EnumerationBudget {
  std::uint64_t max_permutations = 40320;
};

/// Visits S_n in lexicographic order. Throws BudgetExceeded when n! exceeds the budget.
void for_each_permutation(int n, const std::function<void(const Permutation&)>& visit,
                          EnumerationBudget budget = {});

std::vector<Permutation> enumerate_record_fiber(const RecordWord& rho, EnumerationBudget budget = {});

/// Law of sigma^{-1}(t), t = placed.size() + 1, by counting the fiber.
PositionLaw oracle_position_distribution(const RecordWord& rho, const OrderPrefix& placed,
                                         EnumerationBudget budget = {});

/// Laws of sigma^{-1}(t) for every prefix (sigma^{-1}(1), ..., sigma^{-1}(t-1))
/// of positive probability with t - 1 <= max_prefix, from one fiber scan.
std::map<std::vector<std::int64_t>, PositionLaw> oracle_position_laws(const RecordWord& rho, int max_prefix,
                                                                      EnumerationBudget budget = {});

/// Uniform measure on the fiber of rho.
ExactDistribution elementary_measure(const RecordWord& rho, EnumerationBudget budget = {});

ExactDistribution oracle_projection(const ExactDistribution& measure, int k);
ApproxDistribution oracle_projection(const ApproxDistribution& measure, int k);

/// Mass constant on every record fiber of S_n (unsupported permutations count as mass 0).
bool is_record_dependent(const ExactDistribution& measure, EnumerationBudget budget = {});
bool is_record_dependent(const ApproxDistribution& measure, EnumerationBudget budget = {});

/// c * theta^{|R(sigma)|} on S_n.
ExactDistribution ewens_records(int n, const Rational& theta, EnumerationBudget budget = {});

/// Per-rho fiber listings and elementary projections, sorted, for regression diffs.
void write_golden(std::ostream& out, int n, EnumerationBudget budget = {});

}  // namespace rdperm::oracle
