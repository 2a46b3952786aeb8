#include "catq/types.hpp"

namespace catq {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Defective: return "Defective";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NumericallySingular: return "NumericallySingular";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::TimeOutOfRange: return "TimeOutOfRange";
    case ErrorKind::TimeOrder: return "TimeOrder";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::DegenerateWeights: return "DegenerateWeights";
    case ErrorKind::VanishingOverlap: return "VanishingOverlap";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ConfigParse: return "ConfigParse";
  }
  return "Unknown";
}

}  // namespace catq
