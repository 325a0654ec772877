#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace weylflow {

/// Operands live in different dimensions (or different algebra signatures).
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A flow series is not of the form p_mu + (terms of positive k-degree).
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two routes that must agree exactly did not. Always an implementation bug.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed realization expression; offset is the byte position in the source.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : std::runtime_error(message + " at offset " + std::to_string(offset)),
        message_(message),
        offset_(offset) {}

  const std::string& message() const noexcept { return message_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::string message_;
  std::size_t offset_;
};

}  // namespace weylflow
