#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace adoge {

enum class ErrorCode {
  IndexOutOfRange,
  NonPositiveWeight,
  NegativeWeight,
  DuplicateEdge,
  UnknownCategoricalValue,
  SchemaMismatch,
  MissingRequiredFile,
  MalformedLine,
  InconsistentNodeCount,
  CrossGraphEdge,
  ZeroStartVector,
  EigensolverFailure,
  DimensionMismatch,
  InvalidConfig,
  EmptyFeatureSet,
  NonFiniteFeature,
  SizeCapExceeded,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI exit-code mapping) can branch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::UnknownCategoricalValue: return "UnknownCategoricalValue";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::MissingRequiredFile: return "MissingRequiredFile";
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::InconsistentNodeCount: return "InconsistentNodeCount";
    case ErrorCode::CrossGraphEdge: return "CrossGraphEdge";
    case ErrorCode::ZeroStartVector: return "ZeroStartVector";
    case ErrorCode::EigensolverFailure: return "EigensolverFailure";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::EmptyFeatureSet: return "EmptyFeatureSet";
    case ErrorCode::NonFiniteFeature: return "NonFiniteFeature";
    case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace adoge
