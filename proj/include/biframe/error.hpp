#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace biframe {

enum class ErrorCode {
  NonFinite,
  NotHermitian,
  NoConvergence,
  DimensionMismatch,
  InvalidInterval,
  NonpositiveWeight,
  LengthMismatch,
  NotPositiveInvertible,
  DimensionTooSmall,
  InvalidConfig,
  ParseError,
  SchemaError,
  UnknownTheoremId,
  UnknownCorpusEntry,
  NotFactorable,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for every domain failure; `code()` carries the kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Malformed input document. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(ErrorCode::ParseError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed document that violates the schema; `key()` is the JSON pointer of the offender.
class SchemaError : public Error {
 public:
  SchemaError(std::string key, const std::string& what)
      : Error(ErrorCode::SchemaError, "'" + key + "': " + what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace biframe
