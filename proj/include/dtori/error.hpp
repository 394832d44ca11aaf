#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dtori {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  Singular,
  NotSaturated,
  NotMaximal,
  NotIsotropic,
  NotSkew,
  NotOrthogonal,
  NotUnimodular,
  IndexOutOfRange,
  SingularDenominator,
  ParseError,
  NotPoisson,
  NotCoprime,
  NotFoundWithinBounds,
};

constexpr std::string_view error_tag(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::NotSaturated: return "NotSaturated";
    case ErrorCode::NotMaximal: return "NotMaximal";
    case ErrorCode::NotIsotropic: return "NotIsotropic";
    case ErrorCode::NotSkew: return "NotSkew";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SingularDenominator: return "SingularDenominator";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotPoisson: return "NotPoisson";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::NotFoundWithinBounds: return "NotFoundWithinBounds";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a code so that front ends can
/// branch on it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view tag() const noexcept { return error_tag(code_); }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : Error(ErrorCode::ParseError,
              what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require_dims(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::DimensionMismatch, what);
}

}  // namespace dtori
