#pragma once

#include "kelly/distribution.hpp"
#include "kelly/growth.hpp"

namespace kelly {

inline constexpr double kDefaultSaturationMargin = 1e-9;

/// Second-order expansion of g around K = 0: K mu - K^2 E[X^2] / 2.
double quadratic_objective(const ReturnDistribution& d, double k);

/// Maximizer of quadratic_objective, mu / E[X^2] = mu / (mu^2 + sigma^2).
/// Throws DegenerateZeroReturn for the point mass at 0.
double kelly_taylor(const ReturnDistribution& d);

/// Merton-style variant mu / sigma^2. Throws ZeroVariance for a point mass.
double kelly_merton(const ReturnDistribution& d);

/// Clamps K into the survival interval with each finite endpoint pulled
/// inward by shrink_toward_zero(endpoint, margin), so the result is strictly
/// inside the open interval for any margin in (0, 1). A zero margin gives the
/// closed endpoints. Throws InvalidArgument for a margin outside [0, 1).
double saturate(double k, const SurvivalInterval& interval,
                double margin = kDefaultSaturationMargin);

}  // namespace kelly
