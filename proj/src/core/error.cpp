#include "solenoid_lab/error.hpp"

namespace solenoid_lab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::WindingTooSmall: return "WindingTooSmall";
    case ErrorCode::SheetOverlap: return "SheetOverlap";
    case ErrorCode::ImageEscapes: return "ImageEscapes";
    case ErrorCode::NotInImage: return "NotInImage";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::NonPositiveP: return "NonPositiveP";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace solenoid_lab
