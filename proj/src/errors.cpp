#include "greedyopt/errors.hpp"

namespace greedyopt {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "invalid-input";
    case ErrorCode::UnsupportedDomain: return "unsupported-domain";
    case ErrorCode::InvalidSchedule: return "invalid-schedule";
    case ErrorCode::InvalidParams: return "invalid-params";
    case ErrorCode::PreconditionViolation: return "precondition-violation";
    case ErrorCode::OracleFailure: return "oracle-failure";
    case ErrorCode::ParseError: return "parse-error";
    case ErrorCode::IoError: return "io-error";
  }
  return "unknown";
}

}  // namespace greedyopt
