#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ltl {

/// Base of every error thrown by the library. The CLI maps subclasses to
/// exit codes (user error 1, budget/timeout 2, invariant failure 3).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed formula text. `position` is a 0-based character offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : Error(msg + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Malformed sample file. `line` is 1-based.
class FormatError : public Error {
 public:
  FormatError(const std::string& msg, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

/// The same omega-word occurs among positives and negatives.
class ContradictorySample : public Error {
 public:
  using Error::Error;
};

/// Every size up to the configured maximum was unsatisfiable.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

class Timeout : public Error {
 public:
  Timeout(const std::string& msg, int last_completed_size)
      : Error(msg), last_completed_size_(last_completed_size) {}
  /// Largest size whose satisfiability was settled before the budget ran out (0 if none).
  int last_completed_size() const { return last_completed_size_; }

 private:
  int last_completed_size_;
};

class SolverFailure : public Error {
 public:
  using Error::Error;
};

/// A broken internal contract (e.g. a decoded formula that is not consistent).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace ltl
