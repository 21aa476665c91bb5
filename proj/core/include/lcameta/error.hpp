#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace lcameta {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document. `position` is a 1-based line for CSV input and a
/// byte offset for JSON input; 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position = 0)
      : Error(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Input that parsed but violates a domain invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Numerical precondition failure (rank deficiency, degenerate variance, ...).
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A rejected tabular file; carries one diagnostic per offending row.
class DatasetError : public ValidationError {
 public:
  explicit DatasetError(std::vector<std::string> diagnostics);
  const std::vector<std::string>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

}  // namespace lcameta
