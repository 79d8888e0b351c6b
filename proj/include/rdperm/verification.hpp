#pragma once

#include <string>
#include <vector>

namespace rdperm {

struct CriterionResult {
  int id;
  std::string title;
  bool pass;
  std::string detail;  // deterministic, no timings

  /// "criterion <id> PASS|FAIL <title>: <detail>"
  std::string line() const;
};

constexpr int kCriteria = 8;

/// Runs one acceptance criterion (1..8) with its pinned seeds.
CriterionResult run_criterion(int id);

std::vector<CriterionResult> run_all_criteria();

}  // namespace rdperm
