#include "aimforge/error.hpp"

namespace aimforge {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::domain_violation: return "domain_violation";
    case ErrorCode::precondition_violation: return "precondition_violation";
    case ErrorCode::invalid_transition: return "invalid_transition";
    case ErrorCode::empty_verdict_list: return "empty_verdict_list";
    case ErrorCode::parse_failure: return "parse_failure";
    case ErrorCode::transport_failure: return "transport_failure";
    case ErrorCode::auth_failure: return "auth_failure";
    case ErrorCode::script_exhausted: return "script_exhausted";
    case ErrorCode::malformed_record: return "malformed_record";
    case ErrorCode::malformed_input: return "malformed_input";
    case ErrorCode::io_failure: return "io_failure";
  }
  return "unknown";
}

}  // namespace aimforge
