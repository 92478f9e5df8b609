#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace csa {

/// Every failure the engine can report. Each code maps to exactly one
/// machine-readable string and one HTTP status class.
enum class ErrorCode {
  ParseError,
  InvalidDisorderSet,
  UnknownDisorder,
  DuplicatePair,
  SelfPair,
  UnknownProperty,
  NotLinear,
  NotWeak,
  NotSemiorder,
  InvalidMatrix,
  NotConverged,
  InconsistentMatrix,
  PartitionError,
  UnassignedDisorder,
  UnknownLevel,
  CycleDetected,
  BadPercentiles,
  ThresholdOrder,
  BadParameters,
  MissingInput,
  NotFound,
  RevisionConflict,
  ValidationFailure,
  CorruptDocument,
  StorageFailure,
};

std::string_view to_string(ErrorCode code);

/// HTTP status for the error class: 400 validation, 404 missing,
/// 409 conflict, 422 method precondition, 500 storage.
int http_status(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        nlohmann::json details = nlohmann::json::object())
      : std::runtime_error(message), code_(code), details_(std::move(details)) {}

  ErrorCode code() const noexcept { return code_; }
  const nlohmann::json& details() const noexcept { return details_; }

  nlohmann::json to_json() const;

 private:
  ErrorCode code_;
  nlohmann::json details_;
};

}  // namespace csa
