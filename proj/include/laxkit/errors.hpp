#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace laxkit {

enum class ErrorCode {
  NonTerminating,
  DerivativeOrderOverflow,
  UnboundField,
  UnknownConnection,
  InvalidInverse,
  ParseError,
  UnknownEquation,
  IncompatibleSystem,
  ZeroLambda,
  SingularLambda,
  EmptyWindow,
  DimensionMismatch,
  GridTooSmall,
  PathInconsistent,
  UnboundAtom,
  NonMonotone,
  NotALift,
  ConfigInvalid,
  IoFailure,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the report runner in particular) can record it per claim.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace laxkit
