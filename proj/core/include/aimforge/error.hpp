#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace aimforge {

enum class ErrorCode {
  invalid_argument,
  domain_violation,
  precondition_violation,
  invalid_transition,
  empty_verdict_list,
  parse_failure,
  transport_failure,
  auth_failure,
  script_exhausted,
  malformed_record,
  malformed_input,
  io_failure,
};

std::string_view to_string(ErrorCode code) noexcept;

/// The single exception type thrown by aimforge. Callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A complete trajectory line that failed to parse. line() is 1-based.
class MalformedRecord : public Error {
 public:
  MalformedRecord(std::size_t line, const std::string& detail)
      : Error(ErrorCode::malformed_record,
              "malformed record at line " + std::to_string(line) + ": " + detail),
        line_(line) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace aimforge
