#include "compkern/error.hpp"

namespace compkern {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidComposition: return "InvalidComposition";
    case ErrorCode::kDegenerateCoordinate: return "DegenerateCoordinate";
    case ErrorCode::kInvalidScale: return "InvalidScale";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kNonpositiveShift: return "NonpositiveShift";
    case ErrorCode::kNonpositiveEntry: return "NonpositiveEntry";
    case ErrorCode::kNonzeroSum: return "NonzeroSum";
    case ErrorCode::kNonpositiveCoordinate: return "NonpositiveCoordinate";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInvalidParameters: return "InvalidParameters";
    case ErrorCode::kInvalidWeight: return "InvalidWeight";
    case ErrorCode::kNotPSD: return "NotPSD";
    case ErrorCode::kInvalidPartition: return "InvalidPartition";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kDuplicateLeafName: return "DuplicateLeafName";
    case ErrorCode::kUnknownLeaf: return "UnknownLeaf";
    case ErrorCode::kSolveFailure: return "SolveFailure";
    case ErrorCode::kAllPointsIdentical: return "AllPointsIdentical";
    case ErrorCode::kFoldTooSmall: return "FoldTooSmall";
    case ErrorCode::kSingleClassFold: return "SingleClassFold";
    case ErrorCode::kEmptySubset: return "EmptySubset";
    case ErrorCode::kPredictorFailure: return "PredictorFailure";
    case ErrorCode::kZeroSumRow: return "ZeroSumRow";
    case ErrorCode::kNonBinaryLabels: return "NonBinaryLabels";
    case ErrorCode::kAllFeaturesFiltered: return "AllFeaturesFiltered";
    case ErrorCode::kMissingColumn: return "MissingColumn";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

ErrorCategory error_category(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidParameters:
    case ErrorCode::kMissingColumn:
    case ErrorCode::kIoError:
    case ErrorCode::kInvalidScale:
    case ErrorCode::kOutOfRange:
    case ErrorCode::kNonpositiveShift:
      return ErrorCategory::kUsage;
    case ErrorCode::kSolveFailure:
    case ErrorCode::kNotPSD:
    case ErrorCode::kAllPointsIdentical:
      return ErrorCategory::kNumerical;
    default:
      return ErrorCategory::kData;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code) {}

ParseError::ParseError(const std::string& message, std::size_t offset,
                       std::size_t line, std::size_t column)
    : Error(ErrorCode::kParseError, message),
      offset_(offset),
      line_(line),
      column_(column) {}

}  // namespace compkern
