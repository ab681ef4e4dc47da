#pragma once

#include <stdexcept>
#include <string>

namespace ifcdms {

// Malformed input: invalid distribution, channel, shape mismatch, bad file.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A document (channel file) could not be read or decoded.
class ParseError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// A parameter lies outside the hypothesis of the formula being evaluated
// (e.g. |b| > 1 for the weak-interference capacity region).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Numerical breakdown of the LP solver, distinct from an infeasible system.
class LpFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Alphabet sizes or search budgets beyond the configured guard.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An information quantity came out negative beyond rounding tolerance.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ifcdms
