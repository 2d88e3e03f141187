#include "masurelab/error.hpp"

namespace masurelab {

std::string_view code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::BadDiagonal: return "BadDiagonal";
    case ErrorCode::PositiveOffDiagonal: return "PositiveOffDiagonal";
    case ErrorCode::BrokenZeroSymmetry: return "BrokenZeroSymmetry";
    case ErrorCode::InvalidRootDatum: return "InvalidRootDatum";
    case ErrorCode::NotInQveeSpan: return "NotInQveeSpan";
    case ErrorCode::NotInYPlusVin: return "NotInYPlusVin";
    case ErrorCode::NotDominantable: return "NotDominantable";
    case ErrorCode::BoundExceeded: return "BoundExceeded";
    case ErrorCode::NotDecomposable: return "NotDecomposable";
    case ErrorCode::InvalidPath: return "InvalidPath";
    case ErrorCode::CutoffTooSmall: return "CutoffTooSmall";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::MissingMultiplicity: return "MissingMultiplicity";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

void fail_invariant(const char* expr, const char* file, int line) {
  throw InternalError(std::string("invariant violated: ") + expr + " at " + file + ":" +
                      std::to_string(line));
}

}  // namespace masurelab
