#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace grouplaw {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Structural incompatibility: mismatched moduli, arities, dimensions, sizes.
class ShapeError : public Error {
public:
  explicit ShapeError(const std::string& msg) : Error(msg) {}
};

// Mathematically invalid input: non-prime modulus, division by zero, bad
// group parameters, violated operation preconditions.
class DomainError : public Error {
public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// An exhaustive computation would exceed its stated budget.
class BudgetError : public Error {
public:
  explicit BudgetError(const std::string& msg) : Error(msg) {}
};

// Word-grammar syntax error; `position` is a 0-based offset into the input.
class ParseError : public Error {
public:
  ParseError(const std::string& msg, std::size_t position)
      : Error(msg + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

}  // namespace grouplaw
