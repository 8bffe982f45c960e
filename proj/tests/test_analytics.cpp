#include <random>

#include "doctest.h"
#include "kelly/analytics.hpp"
#include "kelly/approx.hpp"
#include "kelly/error.hpp"
#include "kelly/growth.hpp"
#include "oracles.hpp"

using namespace kelly;
using doctest::Approx;

namespace {

const auto kCoin = ReturnDistribution::from_atoms({{-0.9, 0.05}, {0.2, 0.95}});
const auto kSymmetric = ReturnDistribution::from_atoms({{-0.5, 0.5}, {0.5, 0.5}});
const auto kRiskless = ReturnDistribution::from_atoms({{0.04, 1.0}});

constexpr double kCoinKStar = 0.145 / 0.18;

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected kelly::Error");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("performance bounds") {
  CHECK(best_performance_bound(kRiskless) == Approx(std::log(2.0)).epsilon(1e-15));
  // log(1 + 0.021025 / 0.0785), 30-digit reference.
  CHECK(best_performance_bound(kCoin) == Approx(0.237310244098018150).epsilon(1e-13));
  CHECK(best_performance_bound(kSymmetric) == 0.0);
  CHECK(kind_of([] { best_performance_bound(ReturnDistribution::from_atoms({{0.0, 1.0}})); }) ==
        ErrorKind::DegenerateZeroReturn);

  CHECK(merton_performance_bound(kCoin) == Approx(0.311748554139117503).epsilon(1e-13));
  CHECK(merton_performance_bound(kSymmetric) == 0.0);
  CHECK(kind_of([] { merton_performance_bound(kRiskless); }) == ErrorKind::ZeroVariance);

  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 500; ++trial) {
    const auto d = oracle::random_distribution(rng, 2, 5, -2.0, 2.0, trial % 2 == 0);
    CHECK(merton_performance_bound(d) >= best_performance_bound(d));
    CHECK(best_performance_bound(d) <= std::log(2.0) + 1e-15);
    const double kt = kelly_taylor(d);
    if (survival_interval(d).contains(kt)) {
      CHECK(log_growth(d, kt) <= best_performance_bound(d) + 1e-12);
    }
    // Jensen for an arbitrary survivable gain.
    const auto s = survival_interval(d);
    const double k = oracle::interior_point(rng, std::max(s.lower, -50.0),
                                            std::min(s.upper, 50.0), 0.01);
    CHECK(log_growth(d, k) <= jensen_bound(d, k) + 1e-12);
  }
}

TEST_CASE("expected_gain") {
  CHECK(expected_gain(kCoin, 0.0, 7, 3.0) == 0.0);
  // Enumeration of the four length-2 sequences.
  const auto e = oracle::enumerate_sequences(kCoin.atoms(), 0.5, 2, 100.0);
  CHECK(e.gain_mean == Approx(15.025625).epsilon(1e-13));
  CHECK(expected_gain(kCoin, 0.5, 2, 100.0) == Approx(15.025625).epsilon(1e-13));
  CHECK(expected_gain(kCoin, 1.847, 1, 1.0) == Approx(1.847 * 0.145).epsilon(1e-13));
  CHECK(expected_gain(kCoin, kelly_taylor(kCoin), 1, 1.0) ==
        Approx(0.267834394904458599).epsilon(1e-13));
  CHECK(kind_of([] { expected_gain(kCoin, 0.5, 0, 1.0); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { expected_gain(kCoin, 0.5, 1, 0.0); }) == ErrorKind::InvalidArgument);
  // Negative growth factor still follows the formula.
  CHECK(expected_gain(kCoin, -10.0, 3, 1.0) == Approx(std::pow(1 - 1.45, 3) - 1).epsilon(1e-13));
}

TEST_CASE("gain_variance") {
  for (double k : {-3.0, 0.5, 25.0}) {
    for (std::uint64_t n : {1u, 4u, 30u}) CHECK(gain_variance(kRiskless, k, n, 2.0) == 0.0);
  }
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const auto d = oracle::random_distribution(rng, 1, 5, -1.0, 1.0, false);
    CHECK(gain_variance(d, 1.0, 1, 1.0) == Approx(d.variance()).epsilon(1e-12));
  }
  const double kt = kelly_taylor(kCoin);
  for (std::uint64_t n : {1u, 2u, 3u}) {
    CHECK(std::abs(gain_variance(kCoin, kt, n, 1.0) - gain_variance_at_taylor(kCoin, n, 1.0)) <=
          1e-12);
    const auto e = oracle::enumerate_sequences(kCoin.atoms(), kt, static_cast<int>(n), 1.0);
    CHECK(oracle::relative_error(gain_variance(kCoin, kt, n, 1.0), e.gain_variance) < 1e-12);
  }
  // 1 + K mu = 0 leaves only the sigma_K^2N term.
  const double k0 = -1.0 / kCoin.mean();
  CHECK(gain_variance(kCoin, k0, 3, 1.0) ==
        Approx(std::pow(k0 * k0 * kCoin.variance(), 3)).epsilon(1e-12));
}

TEST_CASE("gain_variance at the Taylor gain matches the specialized display") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 300; ++trial) {
    const auto d = oracle::random_distribution(rng, 2, 5, -1.0, 1.0, false);
    const double kt = kelly_taylor(d);
    for (std::uint64_t n : {1u, 2u, 5u, 10u}) {
      const double general = gain_variance(d, kt, n, 1.0);
      const double display = gain_variance_at_taylor(d, n, 1.0);
      CHECK(std::abs(general - display) <= 1e-12 * std::max(1.0, std::abs(display)));
    }
  }
}

TEST_CASE("log_growth_variance") {
  CHECK(log_growth_variance(kCoin, 0.0, 5) == 0.0);
  // 0.05 log^2(0.275) + 0.95 log^2(1.161111...) - g*^2, 30-digit reference.
  CHECK(log_growth_variance(kCoin, kCoinKStar, 1) == Approx(0.0985454706812114434).epsilon(1e-12));
  CHECK(kind_of([] { log_growth_variance(kCoin, 1.2, 1); }) ==
        ErrorKind::OutsideSurvivalInterval);

  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = oracle::random_distribution(rng, 2, 4, -2.0, 2.0, true);
    const auto s = survival_interval(d);
    const double k = oracle::interior_point(rng, s.lower, s.upper, 0.02);
    CHECK(log_growth_variance(d, k, 2) == 2.0 * log_growth_variance(d, k, 1));
    const double direct = oracle::weighted_sum(d.atoms(), [&](double x) {
      return std::pow(std::log(1 + k * x), 2);
    }) - std::pow(oracle::direct_log_growth(d.atoms(), k), 2);
    CHECK(log_growth_variance(d, k, 1) == Approx(direct).epsilon(1e-8));
  }
}

TEST_CASE("closed forms agree with exhaustive enumeration") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = oracle::random_distribution(rng, 1, 3, -1.5, 1.5, trial % 3 != 0);
    const auto s = survival_interval(d);
    const double k = oracle::interior_point(rng, std::max(s.lower, -20.0),
                                            std::min(s.upper, 20.0), 0.02);
    const int n = 1 + trial % 6;
    const auto e = oracle::enumerate_sequences(d.atoms(), k, n, 1.0);
    CHECK(oracle::relative_error(expected_gain(d, k, n, 1.0), e.gain_mean) < 1e-10);
    CHECK(oracle::relative_error(gain_variance(d, k, n, 1.0), e.gain_variance) < 1e-10);
    CHECK(oracle::relative_error(log_growth_variance(d, k, n), e.log_ratio_variance) < 1e-10);
  }
}

TEST_CASE("gap_upper_bound") {
  CHECK(gap_upper_bound(kCoin, 0.7, 0.7) == 0.0);
  CHECK(gap_upper_bound(kSymmetric, 0.0, 0.0) == 0.0);
  CHECK(kind_of([] { gap_upper_bound(kCoin, 0.8, 1.5); }) == ErrorKind::OutsideSurvivalInterval);
  CHECK(kind_of([] { gap_upper_bound(kCoin, -6.0, 0.5); }) == ErrorKind::OutsideSurvivalInterval);

  const double k_star = solve_exact(kCoin).k_star;
  const double k_approx = saturate(kelly_taylor(kCoin), survival_interval(kCoin));
  const double true_gap = log_growth(kCoin, k_star) - log_growth(kCoin, k_approx);
  const double bound = gap_upper_bound(kCoin, k_star, k_approx);
  CHECK(true_gap >= 0.0);
  CHECK(bound >= true_gap);
  // 30-digit references for k_approx = (1/0.9)(1 - 1e-9).
  CHECK(true_gap == Approx(0.922885453286096536).epsilon(1e-6));
  CHECK(bound == Approx(16.4365494477132159).epsilon(1e-6));
}

TEST_CASE("fractional_vertex_bound") {
  CHECK(fractional_vertex_bound(0.4, 0.4, -0.9, 0.2) == 1.0);
  CHECK(fractional_vertex_bound(0.5, 0.25, -0.5, 0.5) == Approx(1.25 / 1.125).epsilon(1e-15));
  const double k_approx = (1.0 / 0.9) * (1.0 - 1e-9);
  CHECK(fractional_vertex_bound(kCoinKStar, k_approx, -0.9, 0.2) == Approx(2.75e8).epsilon(1e-6));
  CHECK(kind_of([] { fractional_vertex_bound(0.5, 2.0, -0.9, 0.2); }) ==
        ErrorKind::DenominatorNonPositive);
  CHECK(kind_of([] { fractional_vertex_bound(0.5, 0.1, 0.2, -0.9); }) ==
        ErrorKind::InvalidArgument);

  // Endpoint maximum dominates a dense scan of the interval.
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 300; ++trial) {
    double a = u(rng), b = u(rng);
    if (a > b) std::swap(a, b);
    const double ka = u(rng), ks = u(rng);
    if (!(1 + ka * a > 0.05 && 1 + ka * b > 0.05)) continue;
    const double vertex = fractional_vertex_bound(ks, ka, a, b);
    const double scan = oracle::grid_max([&](double z) { return (1 + ks * z) / (1 + ka * z); },
                                         a, b, 1000);
    CHECK(vertex >= scan - 1e-12);
  }
}

TEST_CASE("gap bounds are ordered on random laws") {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 300; ++trial) {
    const auto d = oracle::random_distribution(rng, 2, 5, -1.5, 1.5, true);
    const auto s = survival_interval(d);
    const double k_star = solve_exact(d).k_star;
    const double k_approx = trial % 2 == 0 ? saturate(kelly_taylor(d), s)
                                           : oracle::interior_point(rng, s.lower, s.upper, 0.01);
    const double gap = log_growth(d, k_star) - log_growth(d, k_approx);
    const double jensen = gap_upper_bound(d, k_star, k_approx);
    const auto [x_min, x_max] = d.support_bounds();
    const double vertex = std::log(fractional_vertex_bound(k_star, k_approx, x_min, x_max));
    CHECK(gap >= -1e-10);
    CHECK(jensen - gap >= -1e-10);
    CHECK(vertex - jensen >= -1e-10);
  }
}

TEST_CASE("expected gain grows at the Taylor gain") {
  const double kt = kelly_taylor(kCoin);
  CHECK(expected_gain_monotone_check(kCoin, kt, 50));
  CHECK(expected_gain_monotone_check(kSymmetric, 0.0, 50));
  CHECK_FALSE(expected_gain_monotone_check(kCoin, -1.0, 5));
  CHECK(kind_of([] { expected_gain_monotone_check(kCoin, 0.1, 1); }) ==
        ErrorKind::InvalidArgument);

  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 300; ++trial) {
    const auto d = oracle::random_distribution(rng, 1, 5, -2.0, 2.0, false);
    const double k = kelly_taylor(d);
    CHECK(expected_gain_monotone_check(d, k, 50));
    for (std::uint64_t n = 1; n <= 50; ++n) {
      const double g = expected_gain(d, k, n, 1.0);
      CHECK(g >= 0.0);
      if (d.mean() != 0.0) CHECK(g > 0.0);
    }
  }
}
