#include "emofuse/error.hpp"

namespace emofuse {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::AllZero: return "AllZero";
    case ErrorKind::NegativeMass: return "NegativeMass";
    case ErrorKind::InvalidVector: return "InvalidVector";
    case ErrorKind::MalformedName: return "MalformedName";
    case ErrorKind::UnknownEmotionCode: return "UnknownEmotionCode";
    case ErrorKind::UnknownIntensity: return "UnknownIntensity";
    case ErrorKind::FieldOutOfRange: return "FieldOutOfRange";
    case ErrorKind::NeutralStrongForbidden: return "NeutralStrongForbidden";
    case ErrorKind::InsufficientFiles: return "InsufficientFiles";
    case ErrorKind::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorKind::ZeroConfidence: return "ZeroConfidence";
    case ErrorKind::MissingModality: return "MissingModality";
    case ErrorKind::MissingParameter: return "MissingParameter";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::NoEligibleClips: return "NoEligibleClips";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorKind::InvalidParams: return "InvalidParams";
  }
  return "Unknown";
}

}  // namespace emofuse
