#include "relaxcut/error.hpp"

namespace relaxcut {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegenerateSet: return "DegenerateSet";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::GammaOutOfRange: return "GammaOutOfRange";
    case ErrorCode::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorCode::EtaNonpositive: return "EtaNonpositive";
    case ErrorCode::ZeroSubgradient: return "ZeroSubgradient";
    case ErrorCode::InvalidSubgradient: return "InvalidSubgradient";
    case ErrorCode::FewerThanTwoBlocks: return "FewerThanTwoBlocks";
    case ErrorCode::EmptyReferenceSet: return "EmptyReferenceSet";
    case ErrorCode::ParamFloorViolated: return "ParamFloorViolated";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnknownName: return "UnknownName";
  }
  return "Unknown";
}

}  // namespace relaxcut
