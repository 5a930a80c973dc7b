#include "stabscore/error.h"

namespace stabscore {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kMissingField: return "MissingField";
    case ErrorCode::kDuplicateKey: return "DuplicateKey";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kMalformedRow: return "MalformedRow";
    case ErrorCode::kMissingColumn: return "MissingColumn";
    case ErrorCode::kEmptyFile: return "EmptyFile";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kInvalidBounds: return "InvalidBounds";
    case ErrorCode::kNegativeBarrier: return "NegativeBarrier";
    case ErrorCode::kDenominatorBelowOne: return "DenominatorBelowOne";
    case ErrorCode::kEmptySample: return "EmptySample";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kZeroVariance: return "ZeroVariance";
    case ErrorCode::kTooFewObservations: return "TooFewObservations";
    case ErrorCode::kAllZeroDifferences: return "AllZeroDifferences";
    case ErrorCode::kNonConvergence: return "NonConvergence";
    case ErrorCode::kEmptyLevels: return "EmptyLevels";
    case ErrorCode::kSingleModel: return "SingleModel";
    case ErrorCode::kIncompleteInputs: return "IncompleteInputs";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::size_t> line)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code),
      line_(line) {}

Error Error::WithCause(ErrorCode cause) const {
  Error copy = *this;
  copy.cause_ = cause;
  return copy;
}

}  // namespace stabscore
