#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace symflex {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Inputs that violate a documented precondition (bad indices, wrong sizes,
/// non-finite values, non-unit geometry vectors).
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// A framework/type-map pair that fails the symmetry or automorphism checks.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// Malformed framework document. Line and column are 1-based; zero means the
/// location is not known (semantic errors).
class ParseError : public Error {
public:
  ParseError(const std::string& message, std::size_t line = 0, std::size_t column = 0)
      : Error(format(message, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  static std::string format(const std::string& message, std::size_t line, std::size_t column) {
    if (line == 0) return message;
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message;
  }

  std::size_t line_;
  std::size_t column_;
};

/// The path tracer could not continue, even at the minimum step size.
class TraceError : public Error {
public:
  TraceError(const std::string& message, std::size_t frame)
      : Error(message + " (at frame " + std::to_string(frame) + ")"), frame_(frame) {}

  std::size_t frame() const noexcept { return frame_; }

private:
  std::size_t frame_;
};

}  // namespace symflex
