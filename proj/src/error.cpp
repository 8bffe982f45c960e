#include "kelly/error.hpp"

namespace kelly {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::EmptyDistribution: return "EmptyDistribution";
    case ErrorKind::NonPositiveProbability: return "NonPositiveProbability";
    case ErrorKind::ProbabilityMassNotOne: return "ProbabilityMassNotOne";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::OutsideSurvivalInterval: return "OutsideSurvivalInterval";
    case ErrorKind::EmptyFeasibleSet: return "EmptyFeasibleSet";
    case ErrorKind::UnboundedObjective: return "UnboundedObjective";
    case ErrorKind::SupportOutOfUnitRange: return "SupportOutOfUnitRange";
    case ErrorKind::DegenerateZeroReturn: return "DegenerateZeroReturn";
    case ErrorKind::ZeroVariance: return "ZeroVariance";
    case ErrorKind::DenominatorNonPositive: return "DenominatorNonPositive";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace kelly
