#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chom {

// A caller passed a parameter outside an operation's precondition.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An internal algebraic contract was broken (boundary squared nonzero,
// non-acyclic matching, filtration decreasing along the differential).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The parameters are well formed but lie outside the range a closed form covers.
class UnsupportedParameter : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A construction would exceed the configured cell budget.
class SizeLimitExceeded : public std::runtime_error {
 public:
  SizeLimitExceeded(const std::string& what, std::size_t limit, std::size_t estimate)
      : std::runtime_error(what + " (limit " + std::to_string(limit) + ", estimate " +
                           std::to_string(estimate) + " cells)"),
        limit_(limit),
        estimate_(estimate) {}

  std::size_t limit() const noexcept { return limit_; }
  std::size_t estimate() const noexcept { return estimate_; }

 private:
  std::size_t limit_;
  std::size_t estimate_;
};

struct BuildLimits {
  std::size_t max_cells = 5'000'000;
};

}  // namespace chom
