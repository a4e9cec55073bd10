#pragma once

#include <stdexcept>
#include <string>

namespace wsmf {

enum class Errc {
  InvalidArgument,
  SignalTooShort,
  NonFiniteInput,
  InsufficientScales,
  NonPositiveP,
  EmptyField,
  NegativeMomentOnCoefficients,
  AllZeroAtNegativeQ,
  ScaleRangeTooNarrow,
  AllZeroLevel,
  GridLacksSmallPositiveQ,
  IncompatibleQRestriction,
  DegenerateHistogram,
  UnsupportedModel,
  NonPositiveParams,
  DeltaOutOfRange,
  EmbeddingNotPSD,
  LawViolatesUniformBound,
  ParamOutOfRange,
  ParseError,
  ChannelOutOfRange,
  LengthMismatch,
  IoError,
  ConfigError,
};

// Coarse classification, mirrored by the CLI exit codes (2, 3, 4).
enum class ErrorClass { Validation, Compute, Io };

const char* to_string(Errc code) noexcept;
ErrorClass error_class(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), message_(message) {}

  Errc code() const noexcept { return code_; }
  // The message without the code prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  Errc code_;
  std::string message_;
};

}  // namespace wsmf
