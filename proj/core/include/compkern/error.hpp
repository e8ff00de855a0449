#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace compkern {

enum class ErrorCode {
  // Simplex and perturbation preconditions.
  kInvalidComposition,
  kDegenerateCoordinate,
  kInvalidScale,
  kOutOfRange,
  kNonpositiveShift,
  kNonpositiveEntry,
  kNonzeroSum,
  kNonpositiveCoordinate,
  // Kernels and weights.
  kDimensionMismatch,
  kInvalidParameters,
  kInvalidWeight,
  kNotPSD,
  kInvalidPartition,
  // Trees.
  kParseError,
  kDuplicateLeafName,
  kUnknownLeaf,
  // Learning.
  kSolveFailure,
  kAllPointsIdentical,
  kFoldTooSmall,
  kSingleClassFold,
  kEmptySubset,
  kPredictorFailure,
  // Data ingestion.
  kZeroSumRow,
  kNonBinaryLabels,
  kAllFeaturesFiltered,
  kMissingColumn,
  kIoError,
};

// Coarse grouping used by the command-line tool to pick an exit code.
enum class ErrorCategory { kUsage, kData, kNumerical };

std::string_view error_code_name(ErrorCode code);
ErrorCategory error_category(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Parse failures carry the position of the offending input.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset,
             std::size_t line = 0, std::size_t column = 0);

  std::size_t offset() const noexcept { return offset_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t offset_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace compkern
