#pragma once

#include <cstddef>
#include <limits>

#include "kelly/distribution.hpp"

namespace kelly {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Open interval of feedback gains K for which 1 + K x > 0 on every atom, so
/// the account stays strictly positive along every sample path. Always
/// contains 0; `lower` is -inf without positive support, `upper` is +inf
/// without negative support.
struct SurvivalInterval {
  double lower = -kInf;
  double upper = kInf;

  bool contains(double k) const noexcept { return lower < k && k < upper; }
};

SurvivalInterval survival_interval(const ReturnDistribution& d);

/// Moves a finite endpoint toward zero by margin * max(1, |endpoint|), or by
/// margin * |endpoint| when the absolute shift would reach zero. Infinite
/// endpoints are returned unchanged.
double shrink_toward_zero(double endpoint, double margin);

/// E[log(1 + K X)]. Returns -inf when some atom has 1 + K x <= 0.
double log_growth(const ReturnDistribution& d, double k);

/// E[X / (1 + K X)]; throws OutsideSurvivalInterval unless K is strictly
/// inside survival_interval(d).
double log_growth_derivative(const ReturnDistribution& d, double k);

/// Closed constraint interval on K; the default is unconstrained.
struct GainConstraint {
  double lo = -kInf;
  double hi = kInf;

  /// |u(k)| <= V(k), i.e. K in [-1, 1].
  static GainConstraint cash() { return {-1.0, 1.0}; }
};

struct OptimizationResult {
  double k_star = 0.0;
  double g_star = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  bool at_constraint_boundary = false;
  std::size_t iterations = 0;
};

/// Maximizes g over the constraint intersected with the survival interval.
///
/// g is strictly concave for two or more atoms, so the search runs bisection
/// on the sign of g' until the bracket cannot be split further in double
/// precision (always at or below 1e-12 for |K| <= 1). Open survival endpoints
/// are shrunk inward by 1e-9 relative before evaluation; infinite endpoints
/// are bracketed by doubling outward, giving up with UnboundedObjective after
/// 200 doublings. A finite constraint endpoint is returned when the
/// derivative there already points outward.
///
/// Throws EmptyFeasibleSet or UnboundedObjective.
OptimizationResult solve_exact(const ReturnDistribution& d, GainConstraint constraint = {});

enum class Attractiveness { FullLong, FullShort, Inconclusive };

const char* to_string(Attractiveness a) noexcept;

/// E[1 / (1 + X)] and E[1 / (1 - X)].
double inverse_long_moment(const ReturnDistribution& d);
double inverse_short_moment(const ReturnDistribution& d);

/// Cash-financed optimum test: FullLong when E[1/(1+X)] <= 1, else FullShort
/// when E[1/(1-X)] <= 1, else Inconclusive. Requires -1 < X_min and
/// X_max < 1 (SupportOutOfUnitRange otherwise).
Attractiveness attractiveness_check(const ReturnDistribution& d);

}  // namespace kelly
