#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "kelly/distribution.hpp"

namespace kelly {

struct SimulationConfig {
  double k = 0.0;
  std::uint64_t horizon = 1;
  double v0 = 1.0;
  std::uint64_t paths = 1;
  std::uint64_t seed = 0;
  /// Worker threads; 0 picks std::thread::hardware_concurrency(). The result
  /// does not depend on this value.
  unsigned threads = 0;
};

inline constexpr std::array<double, 5> kTerminalQuantileLevels = {0.01, 0.25, 0.50, 0.75, 0.99};

struct SimulationResult {
  double empirical_gain_mean = 0.0;
  double empirical_gain_variance = 0.0;
  /// Per stage, i.e. log(V(N)/V(0)) / N, averaged over non-ruined paths.
  double empirical_log_growth_mean = 0.0;
  /// Variance of the total log(V(N)/V(0)) over non-ruined paths.
  double empirical_log_growth_variance = 0.0;
  double min_account_value = 0.0;
  std::uint64_t ruin_paths = 0;
  std::uint64_t paths = 0;
  std::array<double, 5> terminal_quantiles{};

  // Standard errors of the four empirical statistics above.
  double gain_mean_stderr = 0.0;
  double gain_variance_stderr = 0.0;
  double log_growth_mean_stderr = 0.0;
  double log_growth_variance_stderr = 0.0;
};

struct PathOutcome {
  double terminal_value = 0.0;
  double min_value = 0.0;
  /// Sum of log(1 + K x) over the path; meaningless when ruined.
  double log_ratio = 0.0;
  bool ruined = false;
};

/// Inverse-CDF lookup on the sorted atoms. Atom i owns the right-closed
/// interval (c_{i-1}, c_i] of the cumulative probabilities.
class AtomSampler {
 public:
  explicit AtomSampler(const ReturnDistribution& d);

  /// u in [0, 1).
  double operator()(double u) const;

 private:
  std::vector<double> values_;
  std::vector<double> cumulative_;
};

/// Engine for path `index`: std::mt19937_64 seeded with
/// splitmix64(seed ^ splitmix64(index)). Depends only on (seed, index).
std::mt19937_64 path_engine(std::uint64_t seed, std::uint64_t index);

/// Top 53 bits of one engine output scaled to [0, 1).
double uniform01(std::mt19937_64& engine);

/// Runs V(k+1) = (1 + K X(k)) V(k) for every path. Ruined paths keep
/// following the recursion; the flag records that some V(k) <= 0.
std::vector<PathOutcome> simulate_path_outcomes(const ReturnDistribution& d,
                                                const SimulationConfig& cfg);

/// Reduces outcomes in path order, so the summary is independent of the
/// thread schedule that produced them.
SimulationResult summarize_outcomes(std::span<const PathOutcome> outcomes,
                                    const SimulationConfig& cfg);

SimulationResult simulate_paths(const ReturnDistribution& d, const SimulationConfig& cfg);

/// Whether V stays positive for N stages on every path built from X_min and
/// X_max. For N <= 20 all 2^N sequences are enumerated and checked against
/// the per-step condition 1 + K X_min > 0 and 1 + K X_max > 0; beyond that
/// only the per-step condition is evaluated.
bool worst_case_survival(const ReturnDistribution& d, double k, std::uint64_t horizon);

}  // namespace kelly
