#pragma once

#include <stdexcept>
#include <string>

namespace ldar {

/// Broad failure category. The numeric values double as CLI exit codes.
enum class ErrorCategory : int {
  usage = 2,
  data = 3,
  numerical = 4,
  io = 5,
};

const char* to_string(ErrorCategory category) noexcept;

/// Base of every exception thrown by the library.
///
/// `code()` is a stable dotted identifier (for example "csv.missing_column")
/// that callers can match on; the message is free text for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, std::string code, const std::string& message)
      : std::runtime_error(message), category_(category), code_(std::move(code)) {}

  ErrorCategory category() const noexcept { return category_; }
  const std::string& code() const noexcept { return code_; }
  int exit_code() const noexcept { return static_cast<int>(category_); }

 private:
  ErrorCategory category_;
  std::string code_;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& message, std::string code = "domain")
      : Error(ErrorCategory::usage, std::move(code), message) {}
};

/// Index outside the valid range of a series.
class RangeError : public Error {
 public:
  explicit RangeError(const std::string& message)
      : Error(ErrorCategory::usage, "range", message) {}
};

/// Sample is too small or has no spread.
class DegenerateSampleError : public Error {
 public:
  explicit DegenerateSampleError(const std::string& message)
      : Error(ErrorCategory::data, "degenerate_sample", message) {}
};

/// A matrix that must be inverted is numerically singular.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& message, double rcond)
      : Error(ErrorCategory::numerical, "singular", message), rcond_(rcond) {}
  double rcond() const noexcept { return rcond_; }

 private:
  double rcond_;
};

/// Malformed input data (CSV cells, empty series, missing columns).
class DataError : public Error {
 public:
  DataError(std::string code, const std::string& message)
      : Error(ErrorCategory::data, std::move(code), message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message, std::string code = "io")
      : Error(ErrorCategory::io, std::move(code), message) {}
};

}  // namespace ldar
