#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace emofuse {

enum class ErrorKind {
  // probability vectors
  AllZero,
  NegativeMass,
  InvalidVector,
  // filename grammars
  MalformedName,
  UnknownEmotionCode,
  UnknownIntensity,
  FieldOutOfRange,
  NeutralStrongForbidden,
  InsufficientFiles,
  // fusion
  NonPositiveWeight,
  ZeroConfidence,
  MissingModality,
  MissingParameter,
  InvalidConfig,
  // manifests and evaluation
  SchemaError,
  ValidationError,
  IoError,
  NoEligibleClips,
  LengthMismatch,
  EmptyInput,
  UnsupportedFormat,
  InvalidParams,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for every domain failure; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace emofuse
