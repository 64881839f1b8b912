#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scanplan {

/// Argument outside an operation's precondition (bad count, empty grid, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Mathematically undefined input, e.g. log of a non-positive range or a
/// detection disc larger than the region.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A target detection probability that no finite scan count can reach.
class UnreachableTarget : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Operation called on a path variant that does not support it.
class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Configuration text error. `line()` is 1-based; 0 means end of input.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace scanplan
