#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nv {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t lhs, std::size_t rhs)
      : Error("dimension mismatch: " + std::to_string(lhs) + " vs " + std::to_string(rhs)) {}
};

// Raised when an operation would create a cell finer than the configured exponent cap.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// The pairs handed to an element constructor do not form a bijection of partitions.
class InvalidElement : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace nv
