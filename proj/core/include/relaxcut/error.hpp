#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace relaxcut {

enum class ErrorCode {
  DimensionMismatch,
  DegenerateSet,
  NonFinite,
  GammaOutOfRange,
  ParamOutOfRange,
  EtaNonpositive,
  ZeroSubgradient,
  InvalidSubgradient,
  FewerThanTwoBlocks,
  EmptyReferenceSet,
  ParamFloorViolated,
  InvalidArgument,
  UnknownName,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers can branch on the category without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace relaxcut
