#include "kelly/growth.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kelly/error.hpp"

namespace kelly {

namespace {

constexpr double kEndpointMargin = 1e-9;
constexpr int kMaxDoublings = 200;
constexpr std::size_t kMaxBisections = 4096;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// One end of the feasible set as seen by the solver.
struct Endpoint {
  double value;
  bool from_constraint;
};

}  // namespace

SurvivalInterval survival_interval(const ReturnDistribution& d) {
  const auto [x_min, x_max] = d.support_bounds();
  SurvivalInterval s;
  if (x_max > 0.0) s.lower = -1.0 / x_max;
  if (x_min < 0.0) s.upper = 1.0 / std::abs(x_min);
  return s;
}

double shrink_toward_zero(double endpoint, double margin) {
  if (!std::isfinite(endpoint) || endpoint == 0.0) return endpoint;
  const double magnitude = std::abs(endpoint);
  double shift = margin * std::max(1.0, magnitude);
  if (shift >= magnitude) shift = margin * magnitude;
  return endpoint > 0.0 ? endpoint - shift : endpoint + shift;
}

double log_growth(const ReturnDistribution& d, double k) {
  double g = 0.0;
  for (const auto& a : d.atoms()) {
    const double kx = k * a.value;
    if (!(kx > -1.0)) return -kInf;
    g += a.probability * std::log1p(kx);
  }
  return g;
}

double log_growth_derivative(const ReturnDistribution& d, double k) {
  if (!survival_interval(d).contains(k)) {
    throw Error(ErrorKind::OutsideSurvivalInterval,
                "K = " + fmt(k) + " is outside the survival interval");
  }
  double dg = 0.0;
  for (const auto& a : d.atoms()) dg += a.probability * a.value / (1.0 + k * a.value);
  return dg;
}

OptimizationResult solve_exact(const ReturnDistribution& d, GainConstraint constraint) {
  if (std::isnan(constraint.lo) || std::isnan(constraint.hi)) {
    throw Error(ErrorKind::InvalidArgument, "constraint endpoints must not be NaN");
  }
  const auto survival = survival_interval(d);
  if (constraint.lo > constraint.hi || constraint.lo >= survival.upper ||
      constraint.hi <= survival.lower) {
    throw Error(ErrorKind::EmptyFeasibleSet,
                "constraint [" + fmt(constraint.lo) + ", " + fmt(constraint.hi) +
                    "] does not meet the survival interval (" + fmt(survival.lower) + ", " +
                    fmt(survival.upper) + ")");
  }

  const Endpoint lo = constraint.lo > survival.lower
                          ? Endpoint{constraint.lo, true}
                          : Endpoint{shrink_toward_zero(survival.lower, kEndpointMargin), false};
  Endpoint hi = constraint.hi < survival.upper
                    ? Endpoint{constraint.hi, true}
                    : Endpoint{shrink_toward_zero(survival.upper, kEndpointMargin), false};
  // A constraint squeezed into the shrink margin leaves a single usable point.
  if (hi.value < lo.value) hi = lo;

  OptimizationResult result;
  auto finish = [&](double k, bool boundary) {
    result.k_star = k;
    result.g_star = log_growth(d, k);
    result.at_constraint_boundary = boundary;
    return result;
  };
  auto at_endpoint = [&](const Endpoint& e) {
    result.bracket_lo = result.bracket_hi = e.value;
    return finish(e.value, e.from_constraint);
  };
  auto unbounded = [] {
    return Error(ErrorKind::UnboundedObjective,
                 "log-growth increases without bound over the feasible set");
  };

  if (d.size() == 1) {
    const double x = d.atoms().front().value;
    if (x == 0.0) {
      const double k = std::clamp(0.0, lo.value, hi.value);
      result.bracket_lo = result.bracket_hi = k;
      return finish(k, k != 0.0);
    }
    const Endpoint& best = x > 0.0 ? hi : lo;
    if (!std::isfinite(best.value)) throw unbounded();
    return at_endpoint(best);
  }

  if (d.mean() == 0.0 && lo.value <= 0.0 && 0.0 <= hi.value) {
    result.bracket_lo = result.bracket_hi = 0.0;
    return finish(0.0, false);
  }

  auto slope = [&](double k) { return log_growth_derivative(d, k); };

  if (std::isfinite(lo.value) && slope(lo.value) <= 0.0) return at_endpoint(lo);
  if (std::isfinite(hi.value) && slope(hi.value) >= 0.0) return at_endpoint(hi);

  // Bracket [a, b] with g'(a) > 0 > g'(b).
  double a = lo.value;
  double b = hi.value;
  if (!std::isfinite(a)) {
    const double anchor = std::min(0.0, b);
    double width = 1.0;
    int n = 0;
    for (; n < kMaxDoublings; ++n, width *= 2.0) {
      ++result.iterations;
      if (slope(anchor - width) > 0.0) break;
    }
    if (n == kMaxDoublings) throw unbounded();
    a = anchor - width;
  }
  if (!std::isfinite(b)) {
    const double anchor = std::max(0.0, a);
    double width = 1.0;
    int n = 0;
    for (; n < kMaxDoublings; ++n, width *= 2.0) {
      ++result.iterations;
      if (slope(anchor + width) < 0.0) break;
    }
    if (n == kMaxDoublings) throw unbounded();
    b = anchor + width;
  }

  double slope_a = slope(a);
  double slope_b = slope(b);
  for (std::size_t i = 0; i < kMaxBisections; ++i) {
    const double mid = a + 0.5 * (b - a);
    if (mid <= a || mid >= b) break;
    ++result.iterations;
    const double s = slope(mid);
    if (s > 0.0) {
      a = mid;
      slope_a = s;
    } else if (s < 0.0) {
      b = mid;
      slope_b = s;
    } else {
      a = b = mid;
      slope_a = slope_b = s;
      break;
    }
  }
  result.bracket_lo = a;
  result.bracket_hi = b;
  return finish(std::abs(slope_a) <= std::abs(slope_b) ? a : b, false);
}

const char* to_string(Attractiveness a) noexcept {
  switch (a) {
    case Attractiveness::FullLong: return "FullLong";
    case Attractiveness::FullShort: return "FullShort";
    case Attractiveness::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

double inverse_long_moment(const ReturnDistribution& d) {
  double m = 0.0;
  for (const auto& a : d.atoms()) m += a.probability / (1.0 + a.value);
  return m;
}

double inverse_short_moment(const ReturnDistribution& d) {
  double m = 0.0;
  for (const auto& a : d.atoms()) m += a.probability / (1.0 - a.value);
  return m;
}

Attractiveness attractiveness_check(const ReturnDistribution& d) {
  const auto [x_min, x_max] = d.support_bounds();
  if (!(x_min > -1.0 && x_max < 1.0)) {
    throw Error(ErrorKind::SupportOutOfUnitRange,
                "support [" + fmt(x_min) + ", " + fmt(x_max) + "] must lie inside (-1, 1)");
  }
  // Both conditions hold together only for the point mass at 0.
  if (inverse_long_moment(d) <= 1.0) return Attractiveness::FullLong;
  if (inverse_short_moment(d) <= 1.0) return Attractiveness::FullShort;
  return Attractiveness::Inconclusive;
}

}  // namespace kelly
