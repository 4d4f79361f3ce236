#include "biframe/error.hpp"

namespace biframe {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidInterval: return "InvalidInterval";
    case ErrorCode::NonpositiveWeight: return "NonpositiveWeight";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NotPositiveInvertible: return "NotPositiveInvertible";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::UnknownTheoremId: return "UnknownTheoremId";
    case ErrorCode::UnknownCorpusEntry: return "UnknownCorpusEntry";
    case ErrorCode::NotFactorable: return "NotFactorable";
  }
  return "Unknown";
}

}  // namespace biframe
