#pragma once

#include <stdexcept>
#include <string>

namespace cycdual {

/** Malformed graph input or an invalid graph operation (loops, unknown ids). */
class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** An enumeration budget was exhausted before the search finished. */
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what_budget)
      : std::runtime_error("budget exceeded: " + what_budget) {}
};

/**
 * A result that matrix regularity guarantees to be integral (or a 0/1
 * null-space vector) came out otherwise. Always a bug, never an input error.
 */
class IntegralityViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** Raised for illegal scripted moves in the cops and robber game. */
class IllegalMove : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cycdual
