#include "floquet/errors.hpp"

namespace floquet {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::NonUnitary: return "non-unitary input";
    case ErrorCode::DegenerateAxis: return "degenerate axis";
    case ErrorCode::GaplessPoint: return "gapless point";
    case ErrorCode::InsufficientResolution: return "insufficient resolution";
    case ErrorCode::NoBisFound: return "no BIS found";
    case ErrorCode::AmbiguousSlope: return "ambiguous slope";
    case ErrorCode::BulkGapTooSmall: return "bulk gap too small";
  }
  return "unknown error";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(detail.empty() ? std::string(to_string(code))
                                        : std::string(to_string(code)) + ": " + detail),
      code_(code) {}

}  // namespace floquet
