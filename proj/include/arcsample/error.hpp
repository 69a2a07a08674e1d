#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace arcsample {

enum class ErrorCode {
  EmptyDomain,
  VanishingSpeed,
  NonfiniteSample,
  ZeroPoly,
  NoConvergence,
  RootOnInterval,
  RootInside,
  PositivityFailure,
  Parse,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyDomain: return "EMPTY_DOMAIN";
    case ErrorCode::VanishingSpeed: return "VANISHING_SPEED";
    case ErrorCode::NonfiniteSample: return "NONFINITE_SAMPLE";
    case ErrorCode::ZeroPoly: return "ZERO_POLY";
    case ErrorCode::NoConvergence: return "NO_CONVERGENCE";
    case ErrorCode::RootOnInterval: return "ROOT_ON_INTERVAL";
    case ErrorCode::RootInside: return "ROOT_INSIDE";
    case ErrorCode::PositivityFailure: return "POSITIVITY_FAILURE";
    case ErrorCode::Parse: return "PARSE_ERROR";
  }
  return "UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace arcsample
