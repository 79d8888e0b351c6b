#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rdperm {

/// Rank vector entry outside {1, ..., i}.
class InvalidRank : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A sequence of record words that is not a path of the branching graph.
class InvalidPath : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Conditioning on an event of probability zero.
class ConditioningError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exhaustive computation would exceed the configured enumeration budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t required, std::uint64_t budget)
      : std::runtime_error(what + " (requires " + std::to_string(required) +
                           ", budget " + std::to_string(budget) + ")"),
        required_(required),
        budget_(budget) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

/// Sequence parameters whose summability cannot be certified.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Order prefix too short to determine the requested projection.
class InsufficientPrefix : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace rdperm
