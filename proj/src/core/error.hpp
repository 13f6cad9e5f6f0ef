#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace upic {

enum class ErrorCode {
  kParse,
  kValidation,
  kInvalidArgument,
  kMismatchedGroup,
  kBoundaryNotInCycles,
  kNotASubgroup,
  kHasTorsion,
  kDegreeTooLarge,
  kNotCyclic,
  kBudgetExceeded,
  kPreconditionH0,
  kNotExact,
  kExactnessViolation,
  kOracleMismatch,
  kUnknownTask,
  kExpectationMismatch,
  kInternal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// Carries every violated invariant of the offending object.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& subject, std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& position, const std::string& message)
      : Error(ErrorCode::kParse, position + ": " + message), position_(position) {}
  const std::string& position() const { return position_; }

 private:
  std::string position_;
};

}  // namespace upic
