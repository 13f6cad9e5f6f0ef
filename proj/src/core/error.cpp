#include "error.hpp"

namespace upic {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kValidation: return "ValidationError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kMismatchedGroup: return "MismatchedGroup";
    case ErrorCode::kBoundaryNotInCycles: return "BoundaryNotInCycles";
    case ErrorCode::kNotASubgroup: return "NotASubgroup";
    case ErrorCode::kHasTorsion: return "HasTorsion";
    case ErrorCode::kDegreeTooLarge: return "DegreeTooLarge";
    case ErrorCode::kNotCyclic: return "NotCyclic";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kPreconditionH0: return "PreconditionH0";
    case ErrorCode::kNotExact: return "NotExact";
    case ErrorCode::kExactnessViolation: return "ExactnessViolation";
    case ErrorCode::kOracleMismatch: return "OracleMismatch";
    case ErrorCode::kUnknownTask: return "UnknownTask";
    case ErrorCode::kExpectationMismatch: return "ExpectationMismatch";
    case ErrorCode::kInternal: return "InternalError";
  }
  return "UnknownError";
}

namespace {

std::string join_violations(const std::string& subject, const std::vector<std::string>& v) {
  std::string out = subject + " is invalid";
  for (std::size_t i = 0; i < v.size(); ++i) {
    out += (i == 0 ? ": " : "; ");
    out += v[i];
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(const std::string& subject, std::vector<std::string> violations)
    : Error(ErrorCode::kValidation, join_violations(subject, violations)),
      violations_(std::move(violations)) {}

}  // namespace upic
