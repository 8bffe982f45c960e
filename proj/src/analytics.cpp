#include "kelly/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kelly/error.hpp"
#include "kelly/growth.hpp"

namespace kelly {

namespace {

void check_horizon(std::uint64_t horizon) {
  if (horizon < 1) throw Error(ErrorKind::InvalidArgument, "horizon N must be at least 1");
}

void check_gain_args(std::uint64_t horizon, double v0) {
  check_horizon(horizon);
  if (!(v0 > 0.0) || !std::isfinite(v0)) {
    throw Error(ErrorKind::InvalidArgument, "initial account v0 must be positive and finite");
  }
}

void check_survivable(const ReturnDistribution& d, double k, const char* name) {
  if (!survival_interval(d).contains(k)) {
    throw Error(ErrorKind::OutsideSurvivalInterval,
                std::string(name) + " is outside the survival interval");
  }
}

// (1 + x)^n - 1, through log1p/expm1 whenever the base is positive so small
// increments and long horizons keep their relative precision.
double power_minus_one(double x, std::uint64_t n) {
  const double dn = static_cast<double>(n);
  if (x > -1.0) return std::expm1(dn * std::log1p(x));
  return std::pow(1.0 + x, dn) - 1.0;
}

}  // namespace

double best_performance_bound(const ReturnDistribution& d) {
  if (!(d.second_moment() > 0.0)) {
    throw Error(ErrorKind::DegenerateZeroReturn, "E[X^2] = 0: the return is identically zero");
  }
  const double mu = d.mean();
  return std::log1p(mu * mu / d.second_moment());
}

double merton_performance_bound(const ReturnDistribution& d) {
  if (!(d.variance() > 0.0)) {
    throw Error(ErrorKind::ZeroVariance, "var(X) = 0: the Merton bound is undefined");
  }
  const double mu = d.mean();
  return std::log1p(mu * mu / d.variance());
}

double jensen_bound(const ReturnDistribution& d, double k) {
  const double x = k * d.mean();
  return x > -1.0 ? std::log1p(x) : -kInf;
}

double expected_gain(const ReturnDistribution& d, double k, std::uint64_t horizon, double v0) {
  check_gain_args(horizon, v0);
  return power_minus_one(k * d.mean(), horizon) * v0;
}

double gain_variance(const ReturnDistribution& d, double k, std::uint64_t horizon, double v0) {
  check_gain_args(horizon, v0);
  const double mu_k = 1.0 + k * d.mean();
  const double sigma_k_sq = k * k * d.variance();
  const double dn = static_cast<double>(horizon);
  if (sigma_k_sq == 0.0) return 0.0;
  if (mu_k == 0.0) return std::pow(sigma_k_sq, dn) * v0 * v0;
  // mu_K^(2N) ((1 + sigma_K^2 / mu_K^2)^N - 1)
  const double ratio = sigma_k_sq / (mu_k * mu_k);
  return std::pow(mu_k * mu_k, dn) * std::expm1(dn * std::log1p(ratio)) * v0 * v0;
}

GainStats gain_stats(const ReturnDistribution& d, double k, std::uint64_t horizon, double v0) {
  return {expected_gain(d, k, horizon, v0), gain_variance(d, k, horizon, v0), horizon, v0, k};
}

double gain_variance_at_taylor(const ReturnDistribution& d, std::uint64_t horizon, double v0) {
  check_gain_args(horizon, v0);
  if (!(d.second_moment() > 0.0)) {
    throw Error(ErrorKind::DegenerateZeroReturn, "E[X^2] = 0: the return is identically zero");
  }
  const double mu_sq = d.mean() * d.mean();
  const double var = d.variance();
  const double m2 = mu_sq + var;
  const double dn = static_cast<double>(horizon);
  return (std::pow((4.0 * mu_sq + var) / m2, dn) - std::pow((2.0 * mu_sq + var) / m2, 2.0 * dn)) *
         v0 * v0;
}

double log_growth_variance(const ReturnDistribution& d, double k, std::uint64_t horizon) {
  check_horizon(horizon);
  check_survivable(d, k, "K");
  const double g = log_growth(d, k);
  // Centered form of E[log^2(1 + K X)] - g^2.
  double var = 0.0;
  for (const auto& a : d.atoms()) {
    const double dev = std::log1p(k * a.value) - g;
    var += a.probability * dev * dev;
  }
  return static_cast<double>(horizon) * var;
}

double gap_upper_bound(const ReturnDistribution& d, double k_star, double k_approx) {
  check_survivable(d, k_star, "k_star");
  check_survivable(d, k_approx, "k_approx");
  if (k_star == k_approx) return 0.0;
  double ratio = 0.0;
  for (const auto& a : d.atoms()) {
    ratio += a.probability * (1.0 + k_star * a.value) / (1.0 + k_approx * a.value);
  }
  return std::log(ratio);
}

double fractional_vertex_bound(double k_star, double k_approx, double x_min, double x_max) {
  if (!(x_min <= x_max)) {
    throw Error(ErrorKind::InvalidArgument, "x_min must not exceed x_max");
  }
  const double den_lo = 1.0 + k_approx * x_min;
  const double den_hi = 1.0 + k_approx * x_max;
  if (!(den_lo > 0.0 && den_hi > 0.0)) {
    throw Error(ErrorKind::DenominatorNonPositive,
                "1 + k_approx z must stay positive over [x_min, x_max]");
  }
  if (k_star == k_approx) return 1.0;
  return std::max((1.0 + k_star * x_min) / den_lo, (1.0 + k_star * x_max) / den_hi);
}

bool expected_gain_monotone_check(const ReturnDistribution& d, double k, std::uint64_t n_max) {
  if (n_max < 2) throw Error(ErrorKind::InvalidArgument, "n_max must be at least 2");
  double current = expected_gain(d, k, 1, 1.0);
  for (std::uint64_t n = 1; n < n_max; ++n) {
    const double next = expected_gain(d, k, n + 1, 1.0);
    if (!(current >= 0.0 && next >= current)) return false;
    current = next;
  }
  return true;
}

}  // namespace kelly
