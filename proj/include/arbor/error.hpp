#pragma once

#include <stdexcept>
#include <string>

namespace arbor {

enum class ErrorCode {
  InvalidArgument,
  DepthMismatch,
  LevelOutOfRange,
  MalformedEncoding,
  NotAMember,
  VacuousDepth,
  NotPrime,
  BudgetExceeded,
  PostcriticalBase,
  PeriodicBase,
  WrongPortrait,
  MissingSquareRoot,
  InvariantViolation,
};

const char* error_code_name(ErrorCode code) noexcept;

// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace arbor
