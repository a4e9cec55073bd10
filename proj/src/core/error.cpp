#include "wsmf/error.hpp"

namespace wsmf {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::SignalTooShort: return "SignalTooShort";
    case Errc::NonFiniteInput: return "NonFiniteInput";
    case Errc::InsufficientScales: return "InsufficientScales";
    case Errc::NonPositiveP: return "NonPositiveP";
    case Errc::EmptyField: return "EmptyField";
    case Errc::NegativeMomentOnCoefficients: return "NegativeMomentOnCoefficients";
    case Errc::AllZeroAtNegativeQ: return "AllZeroAtNegativeQ";
    case Errc::ScaleRangeTooNarrow: return "ScaleRangeTooNarrow";
    case Errc::AllZeroLevel: return "AllZeroLevel";
    case Errc::GridLacksSmallPositiveQ: return "GridLacksSmallPositiveQ";
    case Errc::IncompatibleQRestriction: return "IncompatibleQRestriction";
    case Errc::DegenerateHistogram: return "DegenerateHistogram";
    case Errc::UnsupportedModel: return "UnsupportedModel";
    case Errc::NonPositiveParams: return "NonPositiveParams";
    case Errc::DeltaOutOfRange: return "DeltaOutOfRange";
    case Errc::EmbeddingNotPSD: return "EmbeddingNotPSD";
    case Errc::LawViolatesUniformBound: return "LawViolatesUniformBound";
    case Errc::ParamOutOfRange: return "ParamOutOfRange";
    case Errc::ParseError: return "ParseError";
    case Errc::ChannelOutOfRange: return "ChannelOutOfRange";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::IoError: return "IoError";
    case Errc::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

ErrorClass error_class(Errc code) noexcept {
  switch (code) {
    case Errc::EmptyField:
    case Errc::AllZeroAtNegativeQ:
    case Errc::AllZeroLevel:
    case Errc::DegenerateHistogram:
    case Errc::EmbeddingNotPSD:
      return ErrorClass::Compute;
    case Errc::ParseError:
    case Errc::LengthMismatch:
    case Errc::IoError:
      return ErrorClass::Io;
    default:
      return ErrorClass::Validation;
  }
}

}  // namespace wsmf
