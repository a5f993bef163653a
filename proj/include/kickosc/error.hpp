#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kickosc {

enum class ErrorCode {
  CriticalDamping,
  DegenerateBasis,
  OutOfRange,
  WrongRegime,
  EmptyInput,
  StepTooCoarse,
  NonFinite,
  Validation,
  UnknownKey,
  Parse,
  Io,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::CriticalDamping: return "CriticalDamping";
    case ErrorCode::DegenerateBasis: return "DegenerateBasis";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::WrongRegime: return "WrongRegime";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::StepTooCoarse: return "StepTooCoarse";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::Validation: return "ValidationError";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::Io: return "IoError";
  }
  return "Unknown";
}

/// Single exception type for the library; `code()` tells callers which
/// contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kickosc
