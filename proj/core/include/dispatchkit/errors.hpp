#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dispatchkit {

/// Base for every recoverable error raised by the library (bad input files,
/// I/O failures, invalid configuration).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `row()` is the 1-based line number in the file, or 0
/// when the problem is not tied to a single line (e.g. a wrong row count).
class ParseError : public Error {
 public:
  ParseError(std::size_t row, const std::string& what)
      : Error(row > 0 ? "row " + std::to_string(row) + ": " + what : what), row_(row) {}

  std::size_t row() const noexcept { return row_; }

  /// Same error with the file name prepended to the message.
  ParseError in_file(const std::string& file) const { return ParseError(row_, file + ": " + what(), 0); }

 private:
  ParseError(std::size_t row, const std::string& full_message, int) : Error(full_message), row_(row) {}

  std::size_t row_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// A caller broke a documented precondition (e.g. charging and discharging a
/// battery in the same slot).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class InsufficientHistory : public Error {
 public:
  using Error::Error;
};

}  // namespace dispatchkit
