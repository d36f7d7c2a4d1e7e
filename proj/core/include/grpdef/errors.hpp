#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace grpdef {

// Malformed input: bad indices, non-prime moduli, out-of-range parameters.
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class EmptyWordError : public InputError {
public:
  EmptyWordError() : InputError("operation is undefined on the trivial word") {}
};

class ParseError : public InputError {
public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : InputError(what + " at line " + std::to_string(line) + ", column " +
                   std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

class NotAHomomorphism : public InputError {
public:
  NotAHomomorphism()
      : InputError("witness does not define a homomorphism of the presentation") {}
};

// A coset table whose root actions have cycles of unequal length.
class RegularityViolation : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class BudgetExceeded : public std::runtime_error {
public:
  BudgetExceeded(const std::string& what, std::size_t cap)
      : std::runtime_error(what + " (cap " + std::to_string(cap) + ")"), cap_(cap) {}

  std::size_t cap() const { return cap_; }

private:
  std::size_t cap_;
};

}  // namespace grpdef
