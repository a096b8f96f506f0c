#pragma once

#include <stdexcept>
#include <string>

namespace greedyopt {

enum class ErrorCode {
  InvalidInput = 1,
  UnsupportedDomain,
  InvalidSchedule,
  InvalidParams,
  PreconditionViolation,
  OracleFailure,
  ParseError,
  IoError,
};

const char* to_string(ErrorCode code);

/// Every failure inside the library surfaces as an Error carrying a code that
/// the C API maps one-to-one onto its status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace greedyopt
