#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace staffcast {

// Closed error vocabulary shared by the library, the CLI and the HTTP service.
enum class ErrorCode {
  EmptyInput,
  MalformedRow,
  InsufficientData,
  DegenerateX,
  DegenerateY,
  EmptySeries,
  ZeroDivisor,
  OutOfRange,
  EmptyHistory,
  NonPositiveDriver,
  RowOutOfRange,
  UnknownCategory,
  SchemaViolation,
  LengthMismatch,
  DegenerateActuals,
  InvalidRequest,
  NotFound,
  IoError,
  Internal,
};

constexpr std::string_view code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyInput: return "EMPTY_INPUT";
    case ErrorCode::MalformedRow: return "MALFORMED_ROW";
    case ErrorCode::InsufficientData: return "INSUFFICIENT_DATA";
    case ErrorCode::DegenerateX: return "DEGENERATE_X";
    case ErrorCode::DegenerateY: return "DEGENERATE_Y";
    case ErrorCode::EmptySeries: return "EMPTY_SERIES";
    case ErrorCode::ZeroDivisor: return "ZERO_DIVISOR";
    case ErrorCode::OutOfRange: return "OUT_OF_RANGE";
    case ErrorCode::EmptyHistory: return "EMPTY_HISTORY";
    case ErrorCode::NonPositiveDriver: return "NON_POSITIVE_DRIVER";
    case ErrorCode::RowOutOfRange: return "ROW_OUT_OF_RANGE";
    case ErrorCode::UnknownCategory: return "UNKNOWN_CATEGORY";
    case ErrorCode::SchemaViolation: return "SCHEMA_VIOLATION";
    case ErrorCode::LengthMismatch: return "LENGTH_MISMATCH";
    case ErrorCode::DegenerateActuals: return "DEGENERATE_ACTUALS";
    case ErrorCode::InvalidRequest: return "INVALID_REQUEST";
    case ErrorCode::NotFound: return "NOT_FOUND";
    case ErrorCode::IoError: return "IO_ERROR";
    case ErrorCode::Internal: return "INTERNAL";
  }
  return "INTERNAL";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(code_name(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

// Malformed CSV row; line numbers are 1-based and count the header.
class MalformedRowError : public Error {
 public:
  MalformedRowError(std::size_t line_no, const std::string& why)
      : Error(ErrorCode::MalformedRow, "line " + std::to_string(line_no) + ": " + why),
        line_no_(line_no) {}

  std::size_t line_no() const noexcept { return line_no_; }

 private:
  std::size_t line_no_;
};

// Catalog/matrix documents that break the schema; `field` names the offending key.
class SchemaError : public Error {
 public:
  SchemaError(std::string field, const std::string& reason)
      : Error(ErrorCode::SchemaViolation, field + ": " + reason), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace staffcast
