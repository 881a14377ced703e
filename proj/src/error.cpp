#include "kdscope/error.hpp"

namespace kdscope {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotUnitModulus: return "NotUnitModulus";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidSpin: return "InvalidSpin";
    case ErrorCode::SpinTooLarge: return "SpinTooLarge";
    case ErrorCode::InvalidFactorization: return "InvalidFactorization";
    case ErrorCode::DegenerateParameter: return "DegenerateParameter";
    case ErrorCode::EmptySubspace: return "EmptySubspace";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
  }
  return "Unknown";
}

}  // namespace kdscope
