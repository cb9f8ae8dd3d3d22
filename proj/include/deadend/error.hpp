#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace deadend {

enum class ErrorKind {
  UnknownLetter,
  ResourceCap,
  NotInBall,
  InsufficientRadius,
  HypothesisViolated,
  BoundViolated,
  NotGenerating,
  DegenerateHull,
  UnsupportedRank,
  NotAFacet,
  NotEuclidean,
  OutOfBox,
  CapExceeded,
  NotHyperbolic,
  NoFeasibleK,
  TooShort,
  SoundnessUnverified,
  InvalidInput,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownLetter: return "UnknownLetter";
    case ErrorKind::ResourceCap: return "ResourceCap";
    case ErrorKind::NotInBall: return "NotInBall";
    case ErrorKind::InsufficientRadius: return "InsufficientRadius";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::BoundViolated: return "BoundViolated";
    case ErrorKind::NotGenerating: return "NotGenerating";
    case ErrorKind::DegenerateHull: return "DegenerateHull";
    case ErrorKind::UnsupportedRank: return "UnsupportedRank";
    case ErrorKind::NotAFacet: return "NotAFacet";
    case ErrorKind::NotEuclidean: return "NotEuclidean";
    case ErrorKind::OutOfBox: return "OutOfBox";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::NotHyperbolic: return "NotHyperbolic";
    case ErrorKind::NoFeasibleK: return "NoFeasibleK";
    case ErrorKind::TooShort: return "TooShort";
    case ErrorKind::SoundnessUnverified: return "SoundnessUnverified";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (and the CLI exit-code mapping) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace deadend
