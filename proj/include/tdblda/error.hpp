#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tdblda {

enum class ErrorCode {
  NonFinite,
  ShapeMismatch,
  NotSquare,
  NotSymmetric,
  NoConvergence,
  FactorizationFailure,
  EmptyClass,
  SingleClass,
  RankDeficient,
  NonOrthonormalProjector,
  InvalidArgument,
  NonUnitDirection,
  SingularCovariance,
  DegenerateDataset,
  EmptyTrainingSet,
  LengthMismatch,
  Empty,
  MissingFile,
  DecodeError,
  DimensionMismatch,
  EmptyManifest,
  InsufficientClassSize,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so
// callers (and tests) can dispatch on the kind rather than on message text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tdblda
