#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kelly {

enum class ErrorKind {
  EmptyDistribution,
  NonPositiveProbability,
  ProbabilityMassNotOne,
  NonFiniteValue,
  InsufficientSamples,
  OutsideSurvivalInterval,
  EmptyFeasibleSet,
  UnboundedObjective,
  SupportOutOfUnitRange,
  DegenerateZeroReturn,
  ZeroVariance,
  DenominatorNonPositive,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the ErrorKind tags so
/// callers (and tests) can branch on the cause without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace kelly
