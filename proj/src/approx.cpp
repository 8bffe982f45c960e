#include "kelly/approx.hpp"

#include <algorithm>
#include <cmath>

#include "kelly/error.hpp"

namespace kelly {

double quadratic_objective(const ReturnDistribution& d, double k) {
  return k * d.mean() - 0.5 * k * k * d.second_moment();
}

double kelly_taylor(const ReturnDistribution& d) {
  if (!(d.second_moment() > 0.0)) {
    throw Error(ErrorKind::DegenerateZeroReturn, "E[X^2] = 0: the return is identically zero");
  }
  return d.mean() / d.second_moment();
}

double kelly_merton(const ReturnDistribution& d) {
  if (!(d.variance() > 0.0)) {
    throw Error(ErrorKind::ZeroVariance, "var(X) = 0: the Merton gain is undefined");
  }
  return d.mean() / d.variance();
}

double saturate(double k, const SurvivalInterval& interval, double margin) {
  if (!(margin >= 0.0 && margin < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "saturation margin must lie in [0, 1)");
  }
  const double lo = shrink_toward_zero(interval.lower, margin);
  const double hi = shrink_toward_zero(interval.upper, margin);
  return std::clamp(k, lo, hi);
}

}  // namespace kelly
