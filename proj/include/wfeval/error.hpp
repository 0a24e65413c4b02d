#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wfeval {

enum class ErrorCode {
  Cyclic,
  DimensionMismatch,
  NoTasks,
  InterfaceMismatch,
  InterfaceUnsatisfied,
  CycleIntroduced,
  ProbabilitySum,
  NegativeWeights,
  InvalidArgument,
  Parse,
  Schema,
  Validation,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Cyclic: return "CYCLIC";
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::NoTasks: return "NO_TASKS";
    case ErrorCode::InterfaceMismatch: return "INTERFACE_MISMATCH";
    case ErrorCode::InterfaceUnsatisfied: return "INTERFACE_UNSATISFIED";
    case ErrorCode::CycleIntroduced: return "CYCLE_INTRODUCED";
    case ErrorCode::ProbabilitySum: return "PROBABILITY_SUM";
    case ErrorCode::NegativeWeights: return "NEGATIVE_WEIGHTS";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::Parse: return "PARSE";
    case ErrorCode::Schema: return "SCHEMA";
    case ErrorCode::Validation: return "VALIDATION";
  }
  return "UNKNOWN";
}

/// Every failure raised by the library carries a machine-readable code; the
/// message is "<CODE>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace wfeval
