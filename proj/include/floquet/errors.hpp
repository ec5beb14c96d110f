#pragma once

#include <stdexcept>
#include <string>

namespace floquet {

enum class ErrorCode {
  InvalidArgument,
  NonUnitary,
  DegenerateAxis,
  GaplessPoint,
  InsufficientResolution,
  NoBisFound,
  AmbiguousSlope,
  BulkGapTooSmall,
};

// Every failure the library reports carries a machine-readable code; the
// message starts with the code's canonical text so CLI diagnostics are stable.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

const char* to_string(ErrorCode code) noexcept;

}  // namespace floquet
