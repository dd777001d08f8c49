#include "orbnet/error.hpp"

namespace orbnet {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kSubsurfacePoint: return "SubsurfacePoint";
    case ErrorCode::kRadiusOutOfRange: return "RadiusOutOfRange";
    case ErrorCode::kInvalidWalkerSpec: return "InvalidWalkerSpec";
    case ErrorCode::kTleChecksum: return "TleChecksumError";
    case ErrorCode::kTleFormat: return "TleFormatError";
    case ErrorCode::kInvalidFraction: return "InvalidFraction";
    case ErrorCode::kNonPositiveInput: return "NonPositiveInput";
    case ErrorCode::kElevationOutOfRange: return "ElevationOutOfRange";
    case ErrorCode::kNotVisible: return "NotVisible";
    case ErrorCode::kZeroUsers: return "ZeroUsers";
    case ErrorCode::kNoPassObserved: return "NoPassObserved";
    case ErrorCode::kNoServedUsers: return "NoServedUsers";
    case ErrorCode::kEmptyRegion: return "EmptyRegion";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kValidation: return "ValidationError";
    case ErrorCode::kIo: return "IoError";
  }
  return "Unknown";
}

}  // namespace orbnet
