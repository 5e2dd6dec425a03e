#pragma once

#include <stdexcept>
#include <string>

namespace nlab {

enum class ErrorCode {
  DimensionMismatch,
  NonFinite,
  NotSeparable,
  NoConvergence,
  PrecheckFailed,
  GeneratorMismatch,
  BadFrequency,
  ZeroModeUnsupported,
  BadDimension,
  CutoffTooSmall,
  ZeroForce,
  OffGrid,
  GridMismatch,
  IncommensurateShift,
  NotNormalizable,
  AliasedPhase,
  ParseError,
  UnknownKey,
  BadValue,
  IoError,
};

/// Library-wide exception carrying a machine-readable code plus context.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

const char* error_code_name(ErrorCode code);

}  // namespace nlab
