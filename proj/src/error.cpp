#include "tdblda/error.hpp"

namespace tdblda {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::FactorizationFailure: return "FactorizationFailure";
    case ErrorCode::EmptyClass: return "EmptyClass";
    case ErrorCode::SingleClass: return "SingleClass";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NonOrthonormalProjector: return "NonOrthonormalProjector";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonUnitDirection: return "NonUnitDirection";
    case ErrorCode::SingularCovariance: return "SingularCovariance";
    case ErrorCode::DegenerateDataset: return "DegenerateDataset";
    case ErrorCode::EmptyTrainingSet: return "EmptyTrainingSet";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::Empty: return "Empty";
    case ErrorCode::MissingFile: return "MissingFile";
    case ErrorCode::DecodeError: return "DecodeError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyManifest: return "EmptyManifest";
    case ErrorCode::InsufficientClassSize: return "InsufficientClassSize";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace tdblda
