#include "scbench/error.hpp"

namespace scbench {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::UnknownMarker: return "UnknownMarker";
    case ErrorKind::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorKind::InvalidRegistry: return "InvalidRegistry";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::UnterminatedBlockComment: return "UnterminatedBlockComment";
    case ErrorKind::UnterminatedString: return "UnterminatedString";
    case ErrorKind::Io: return "Io";
    case ErrorKind::MissingRecord: return "MissingRecord";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::EmptyMatrix: return "EmptyMatrix";
    case ErrorKind::NoSupportedClasses: return "NoSupportedClasses";
    case ErrorKind::NoValidRuns: return "NoValidRuns";
    case ErrorKind::NotReciprocal: return "NotReciprocal";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::MissingMetadata: return "MissingMetadata";
  }
  return "Error";
}

}  // namespace scbench
