#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace credal {

/// Raised when an operation receives arguments that violate its preconditions
/// (dimension mismatch, unknown variable, cardinality clash, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by the text readers; carries the 1-based line of the offending input.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A well-formed model that breaks a semantic requirement (e.g. a vertex of a
/// credal set whose total mass is not 1).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace credal
