#pragma once

#include <cstdint>

#include "kelly/distribution.hpp"

namespace kelly {

/// Closed-form statistics of the cumulative gain G_K(N) = V(N) - V(0).
struct GainStats {
  double expected_gain = 0.0;
  double gain_variance = 0.0;
  std::uint64_t horizon = 1;
  double v0 = 1.0;
  double k = 0.0;
};

/// Jensen bound at the Taylor gain, log(1 + mu^2 / (mu^2 + sigma^2)) <= log 2.
double best_performance_bound(const ReturnDistribution& d);

/// Same bound at the Merton gain, log(1 + mu^2 / sigma^2).
double merton_performance_bound(const ReturnDistribution& d);

/// log(1 + K mu), the Jensen upper bound on g(K) for an arbitrary gain.
/// -inf when 1 + K mu <= 0.
double jensen_bound(const ReturnDistribution& d, double k);

/// ((1 + K mu)^N - 1) v0. Does not require K to be survivable.
double expected_gain(const ReturnDistribution& d, double k, std::uint64_t horizon, double v0);

/// ((mu_K^2 + sigma_K^2)^N - mu_K^(2N)) v0^2 with mu_K = 1 + K mu and
/// sigma_K = K sigma.
double gain_variance(const ReturnDistribution& d, double k, std::uint64_t horizon, double v0);

GainStats gain_stats(const ReturnDistribution& d, double k, std::uint64_t horizon, double v0);

/// gain_variance specialized to K = mu / E[X^2]:
/// (((4mu^2 + sigma^2) / (mu^2 + sigma^2))^N
///   - ((2mu^2 + sigma^2) / (mu^2 + sigma^2))^(2N)) v0^2.
/// Evaluated by direct powers, independently of gain_variance.
double gain_variance_at_taylor(const ReturnDistribution& d, std::uint64_t horizon, double v0);

/// var(log V(N)/V(0)) = N (E[log^2(1 + K X)] - g(K)^2). K must lie strictly
/// inside the survival interval.
double log_growth_variance(const ReturnDistribution& d, double k, std::uint64_t horizon);

/// Jensen bound on the approximation gap g(k_star) - g(k_approx):
/// log E[(1 + k_star X) / (1 + k_approx X)], exactly 0 when the gains match.
double gap_upper_bound(const ReturnDistribution& d, double k_star, double k_approx);

/// max over z in [x_min, x_max] of (1 + k_star z) / (1 + k_approx z).
/// The ratio is monotone on any interval where the denominator stays
/// positive, so the maximum sits at an endpoint.
double fractional_vertex_bound(double k_star, double k_approx, double x_min, double x_max);

/// True iff expected_gain(N + 1) >= expected_gain(N) >= 0 for 1 <= N < n_max
/// with v0 = 1.
bool expected_gain_monotone_check(const ReturnDistribution& d, double k, std::uint64_t n_max);

}  // namespace kelly
