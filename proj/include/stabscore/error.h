#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace stabscore {

enum class ErrorCode {
  // Input validation.
  kOutOfRange,
  kNonFinite,
  kMissingField,
  kDuplicateKey,
  kEmptyDataset,
  kMalformedRow,
  kMissingColumn,
  kEmptyFile,
  kInvalidArgument,
  kInvalidSpec,
  kInvalidBounds,
  // Scoring preconditions.
  kNegativeBarrier,
  kDenominatorBelowOne,
  // Statistics.
  kEmptySample,
  kLengthMismatch,
  kZeroVariance,
  kTooFewObservations,
  kAllZeroDifferences,
  kNonConvergence,
  // Sensitivity / reporting.
  kEmptyLevels,
  kSingleModel,
  kIncompleteInputs,
  // Filesystem.
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure raised by the library. `line()` is set for errors tied to a
// specific input line (1-based, counting the header).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> line = std::nullopt);

  ErrorCode code() const { return code_; }
  std::optional<std::size_t> line() const { return line_; }
  // Underlying cause for wrapped errors (e.g. OutOfRange inside MalformedRow).
  std::optional<ErrorCode> cause() const { return cause_; }

  Error WithCause(ErrorCode cause) const;

 private:
  ErrorCode code_;
  std::optional<std::size_t> line_;
  std::optional<ErrorCode> cause_;
};

}  // namespace stabscore
