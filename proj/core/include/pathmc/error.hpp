#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pathmc {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed pathway, property or plan text. Line and column are 1-based;
// zero means "not applicable".
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(format(message, line, column)),
        message_(message),
        line_(line),
        column_(column) {}

  const std::string& message() const noexcept { return message_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line,
                            std::size_t column) {
    if (line == 0) return message;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
  }

  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

// A structurally valid model that violates a precondition of an operation
// (normal form, unknown component, species outside a projection, ...).
class ModelError : public Error {
 public:
  using Error::Error;
};

// An explicit resource bound (state cap, oracle cap) was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace pathmc
