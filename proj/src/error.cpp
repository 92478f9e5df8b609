#include "csa/error.hpp"

namespace csa {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::InvalidDisorderSet: return "INVALID_DISORDER_SET";
    case ErrorCode::UnknownDisorder: return "UNKNOWN_DISORDER";
    case ErrorCode::DuplicatePair: return "DUPLICATE_PAIR";
    case ErrorCode::SelfPair: return "SELF_PAIR";
    case ErrorCode::UnknownProperty: return "UNKNOWN_PROPERTY";
    case ErrorCode::NotLinear: return "NOT_LINEAR";
    case ErrorCode::NotWeak: return "NOT_WEAK";
    case ErrorCode::NotSemiorder: return "NOT_SEMIORDER";
    case ErrorCode::InvalidMatrix: return "INVALID_MATRIX";
    case ErrorCode::NotConverged: return "NOT_CONVERGED";
    case ErrorCode::InconsistentMatrix: return "INCONSISTENT_MATRIX";
    case ErrorCode::PartitionError: return "PARTITION_ERROR";
    case ErrorCode::UnassignedDisorder: return "UNASSIGNED_DISORDER";
    case ErrorCode::UnknownLevel: return "UNKNOWN_LEVEL";
    case ErrorCode::CycleDetected: return "CYCLE_DETECTED";
    case ErrorCode::BadPercentiles: return "BAD_PERCENTILES";
    case ErrorCode::ThresholdOrder: return "THRESHOLD_ORDER";
    case ErrorCode::BadParameters: return "BAD_PARAMETERS";
    case ErrorCode::MissingInput: return "MISSING_INPUT";
    case ErrorCode::NotFound: return "NOT_FOUND";
    case ErrorCode::RevisionConflict: return "REVISION_CONFLICT";
    case ErrorCode::ValidationFailure: return "VALIDATION_FAILURE";
    case ErrorCode::CorruptDocument: return "CORRUPT_DOCUMENT";
    case ErrorCode::StorageFailure: return "STORAGE_FAILURE";
  }
  return "UNKNOWN";
}

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotFound:
      return 404;
    case ErrorCode::RevisionConflict:
      return 409;
    case ErrorCode::NotLinear:
    case ErrorCode::NotWeak:
    case ErrorCode::NotSemiorder:
    case ErrorCode::NotConverged:
    case ErrorCode::InconsistentMatrix:
    case ErrorCode::CycleDetected:
    case ErrorCode::MissingInput:
      return 422;
    case ErrorCode::CorruptDocument:
    case ErrorCode::StorageFailure:
      return 500;
    default:
      return 400;
  }
}

nlohmann::json Error::to_json() const {
  return {{"code", std::string(to_string(code_))},
          {"message", what()},
          {"details", details_}};
}

}  // namespace csa
