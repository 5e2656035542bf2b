#include "bufferlane/error.hpp"

namespace bufferlane {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::RateSumViolation: return "RateSumViolation";
    case ErrorKind::NonPositiveLength: return "NonPositiveLength";
    case ErrorKind::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::DensityOutOfRange: return "DensityOutOfRange";
    case ErrorKind::BufferOutOfRange: return "BufferOutOfRange";
    case ErrorKind::NegativeInflow: return "NegativeInflow";
    case ErrorKind::BufferOverflow: return "BufferOverflow";
    case ErrorKind::BufferUnderflow: return "BufferUnderflow";
    case ErrorKind::CflViolation: return "CFLViolation";
    case ErrorKind::NotAShock: return "NotAShock";
    case ErrorKind::NotARarefaction: return "NotARarefaction";
    case ErrorKind::ZeroSpeedAtBoundary: return "ZeroSpeedAtBoundary";
    case ErrorKind::HorizonExceeded: return "HorizonExceeded";
    case ErrorKind::Unreachable: return "Unreachable";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::SemanticError: return "SemanticError";
  }
  return "Unknown";
}

}  // namespace bufferlane
