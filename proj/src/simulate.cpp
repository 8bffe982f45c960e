#include "kelly/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "kelly/error.hpp"

namespace kelly {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

void check_config(const SimulationConfig& cfg) {
  if (cfg.horizon < 1) throw Error(ErrorKind::InvalidArgument, "horizon N must be at least 1");
  if (cfg.paths < 1) throw Error(ErrorKind::InvalidArgument, "paths must be at least 1");
  if (!(cfg.v0 > 0.0) || !std::isfinite(cfg.v0)) {
    throw Error(ErrorKind::InvalidArgument, "initial account v0 must be positive and finite");
  }
  if (!std::isfinite(cfg.k)) throw Error(ErrorKind::InvalidArgument, "gain K must be finite");
}

PathOutcome run_path(const AtomSampler& sampler, const SimulationConfig& cfg,
                     std::uint64_t index) {
  auto engine = path_engine(cfg.seed, index);
  PathOutcome out;
  double v = cfg.v0;
  out.min_value = v;
  for (std::uint64_t step = 0; step < cfg.horizon; ++step) {
    const double kx = cfg.k * sampler(uniform01(engine));
    v *= 1.0 + kx;
    out.min_value = std::min(out.min_value, v);
    if (v <= 0.0) out.ruined = true;
    if (!out.ruined) out.log_ratio += std::log1p(kx);
  }
  out.terminal_value = v;
  return out;
}

struct Moments {
  double mean = 0.0;
  double variance = 0.0;        // unbiased
  double fourth_central = 0.0;  // biased, divides by n
  std::size_t n = 0;
};

template <class Values>
Moments moments(const Values& values) {
  Moments m;
  m.n = values.size();
  if (m.n == 0) return m;
  for (double x : values) m.mean += x;
  m.mean /= static_cast<double>(m.n);
  double ss = 0.0;
  for (double x : values) {
    const double d2 = (x - m.mean) * (x - m.mean);
    ss += d2;
    m.fourth_central += d2 * d2;
  }
  m.fourth_central /= static_cast<double>(m.n);
  if (m.n > 1) m.variance = ss / static_cast<double>(m.n - 1);
  return m;
}

double variance_stderr(const Moments& m) {
  if (m.n < 2) return 0.0;
  return std::sqrt(std::max(0.0, m.fourth_central - m.variance * m.variance) /
                   static_cast<double>(m.n));
}

// Linear interpolation between order statistics at h = (n - 1) p.
double quantile_sorted(const std::vector<double>& sorted, double p) {
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

AtomSampler::AtomSampler(const ReturnDistribution& d) {
  double acc = 0.0;
  for (const auto& a : d.atoms()) {
    values_.push_back(a.value);
    acc += a.probability;
    cumulative_.push_back(acc);
  }
  cumulative_.back() = 1.0;
}

double AtomSampler::operator()(double u) const {
  const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
  const auto i = std::min<std::size_t>(it - cumulative_.begin(), values_.size() - 1);
  return values_[i];
}

std::mt19937_64 path_engine(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(index)));
}

double uniform01(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

std::vector<PathOutcome> simulate_path_outcomes(const ReturnDistribution& d,
                                                const SimulationConfig& cfg) {
  check_config(cfg);
  const AtomSampler sampler(d);
  std::vector<PathOutcome> outcomes(cfg.paths);

  unsigned threads = cfg.threads != 0 ? cfg.threads : std::thread::hardware_concurrency();
  threads = static_cast<unsigned>(
      std::clamp<std::uint64_t>(threads == 0 ? 1 : threads, 1, cfg.paths));

  auto work = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) outcomes[i] = run_path(sampler, cfg, i);
  };
  if (threads == 1) {
    work(0, cfg.paths);
    return outcomes;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  const std::uint64_t chunk = (cfg.paths + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t begin = t * chunk;
    const std::uint64_t end = std::min(cfg.paths, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(work, begin, end);
  }
  return outcomes;
}

SimulationResult summarize_outcomes(std::span<const PathOutcome> outcomes,
                                    const SimulationConfig& cfg) {
  if (outcomes.empty()) throw Error(ErrorKind::InvalidArgument, "no paths to summarize");
  SimulationResult r;
  r.paths = outcomes.size();
  r.min_account_value = std::numeric_limits<double>::infinity();

  std::vector<double> gains;
  std::vector<double> log_ratios;
  std::vector<double> terminal;
  gains.reserve(outcomes.size());
  terminal.reserve(outcomes.size());
  for (const auto& o : outcomes) {
    gains.push_back(o.terminal_value - cfg.v0);
    terminal.push_back(o.terminal_value);
    r.min_account_value = std::min(r.min_account_value, o.min_value);
    if (o.ruined) {
      ++r.ruin_paths;
    } else {
      log_ratios.push_back(o.log_ratio);
    }
  }

  const auto g = moments(gains);
  r.empirical_gain_mean = g.mean;
  r.empirical_gain_variance = g.variance;
  r.gain_mean_stderr = std::sqrt(g.variance / static_cast<double>(g.n));
  r.gain_variance_stderr = variance_stderr(g);

  const double n_stages = static_cast<double>(cfg.horizon);
  if (log_ratios.empty()) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    r.empirical_log_growth_mean = r.empirical_log_growth_variance = nan;
    r.log_growth_mean_stderr = r.log_growth_variance_stderr = nan;
  } else {
    const auto l = moments(log_ratios);
    r.empirical_log_growth_mean = l.mean / n_stages;
    r.empirical_log_growth_variance = l.variance;
    r.log_growth_mean_stderr = std::sqrt(l.variance / static_cast<double>(l.n)) / n_stages;
    r.log_growth_variance_stderr = variance_stderr(l);
  }

  std::sort(terminal.begin(), terminal.end());
  for (std::size_t i = 0; i < kTerminalQuantileLevels.size(); ++i) {
    r.terminal_quantiles[i] = quantile_sorted(terminal, kTerminalQuantileLevels[i]);
  }
  return r;
}

SimulationResult simulate_paths(const ReturnDistribution& d, const SimulationConfig& cfg) {
  const auto outcomes = simulate_path_outcomes(d, cfg);
  return summarize_outcomes(outcomes, cfg);
}

bool worst_case_survival(const ReturnDistribution& d, double k, std::uint64_t horizon) {
  if (horizon < 1) throw Error(ErrorKind::InvalidArgument, "horizon N must be at least 1");
  const auto [x_min, x_max] = d.support_bounds();
  const double f_min = 1.0 + k * x_min;
  const double f_max = 1.0 + k * x_max;
  const bool per_step = f_min > 0.0 && f_max > 0.0;
  if (horizon > 20) return per_step;

  // Depth-first over all sequences; only the sign of V matters, which avoids
  // spurious underflow to zero on long products of small factors.
  const std::array<double, 2> factors = {f_min, f_max};
  const int branches = x_min == x_max ? 1 : 2;
  auto survives = [&](auto&& self, int sign, std::uint64_t depth) -> bool {
    if (depth == horizon) return true;
    for (int b = 0; b < branches; ++b) {
      const double f = factors[b];
      if (f == 0.0) return false;
      const int next = f > 0.0 ? sign : -sign;
      if (next <= 0) return false;
      if (!self(self, next, depth + 1)) return false;
    }
    return true;
  };
  const bool enumerated = survives(survives, 1, 0);
  if (enumerated != per_step) {
    throw std::logic_error("worst_case_survival: enumeration and per-step check disagree");
  }
  return enumerated;
}

}  // namespace kelly
