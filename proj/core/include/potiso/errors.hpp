#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace potiso {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad input: mode mismatches, malformed values, violated preconditions.
struct DomainError : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line(line),
        column(column) {}
  std::size_t line = 0;
  std::size_t column = 0;
};

// A theorem-backed contract failed on a concrete instance.  Must never fire;
// any firing is a finding and carries the full instance dump in what().
struct ContractViolationError : Error {
  using Error::Error;
};

// An exhaustive run would exceed its explicit budget.  Hard failure, never
// silent truncation: an audit that narrows its universe proves nothing.
struct BudgetExceededError : Error {
  using Error::Error;
};

// Element enumeration ran past the end of a finite substructure.
struct ExhaustedError : Error {
  using Error::Error;
};

}  // namespace potiso
