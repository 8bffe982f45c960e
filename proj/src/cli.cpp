#include "kelly/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "kelly/analytics.hpp"
#include "kelly/error.hpp"
#include "kelly/growth.hpp"

namespace kelly::cli {

namespace {

// Slack allowed in the displayed gap ordering.
constexpr double kSandwichSlack = 1e-10;

void describe_distribution(Report& r, const ReturnDistribution& d) {
  const auto [x_min, x_max] = d.support_bounds();
  r.section("distribution")
      .set("atoms", static_cast<std::int64_t>(d.size()))
      .set("mean", d.mean())
      .set("second_moment", d.second_moment())
      .set("variance", d.variance())
      .set("x_min", x_min)
      .set("x_max", x_max);
}

void describe_survival(Report& r, const SurvivalInterval& s) {
  r.section("survival").set("lower", s.lower).set("upper", s.upper);
}

std::string interval_text(const SurvivalInterval& s) {
  return "(" + format_number(s.lower) + ", " + format_number(s.upper) + ")";
}

double saturated_taylor(const ReturnDistribution& d, double margin) {
  return saturate(kelly_taylor(d), survival_interval(d), margin);
}

// Raw and saturated view of one approximate gain.
void describe_gain(Report& r, const std::string& name, const ReturnDistribution& d, double raw,
                   const ApproxOptions& opts) {
  const auto survival = survival_interval(d);
  auto& s = r.section(name);
  const bool inside = survival.contains(raw);
  s.set("k_raw", raw).set("inside_survival_interval", inside).set("g_raw", log_growth(d, raw));
  if (!opts.no_saturate) {
    const double sat = saturate(raw, survival, opts.margin);
    s.set("margin", opts.margin).set("k_saturated", sat).set("g_saturated", log_growth(d, sat));
  }
  if (!inside) {
    r.warn(name + " gain " + format_number(raw) + " is outside the survival interval " +
           interval_text(survival));
  }
}

}  // namespace

Report cmd_solve(const ReturnDistribution& d, const SolveOptions& opts) {
  GainConstraint constraint;
  if (opts.cash) constraint = GainConstraint::cash();
  if (opts.lo) constraint.lo = *opts.lo;
  if (opts.hi) constraint.hi = *opts.hi;

  Report r;
  describe_distribution(r, d);
  describe_survival(r, survival_interval(d));
  r.section("constraint").set("lo", constraint.lo).set("hi", constraint.hi);

  const auto opt = solve_exact(d, constraint);
  r.section("solve")
      .set("k_star", opt.k_star)
      .set("g_star", opt.g_star)
      .set("at_constraint_boundary", opt.at_constraint_boundary)
      .set("iterations", static_cast<std::int64_t>(opt.iterations))
      .set("bracket_lo", opt.bracket_lo)
      .set("bracket_hi", opt.bracket_hi);

  const auto [x_min, x_max] = d.support_bounds();
  if (x_min > -1.0 && x_max < 1.0) {
    r.section("attractiveness")
        .set("verdict", to_string(attractiveness_check(d)))
        .set("e_inv_one_plus_x", inverse_long_moment(d))
        .set("e_inv_one_minus_x", inverse_short_moment(d));
  }
  return r;
}

Report cmd_approx(const ReturnDistribution& d, const ApproxOptions& opts) {
  Report r;
  describe_distribution(r, d);
  describe_survival(r, survival_interval(d));

  const double taylor = kelly_taylor(d);
  describe_gain(r, "taylor", d, taylor, opts);
  r.section("taylor")
      .set("quadratic_peak", quadratic_objective(d, taylor))
      .set("best_performance_bound", best_performance_bound(d));

  if (opts.merton) {
    if (d.variance() > 0.0) {
      describe_gain(r, "merton", d, kelly_merton(d), opts);
      r.section("merton").set("merton_performance_bound", merton_performance_bound(d));
    } else {
      r.warn("merton gain is undefined for a zero-variance return");
    }
  }
  return r;
}

Report cmd_analyze(const ReturnDistribution& d, const AnalyzeOptions& opts) {
  const double k = opts.k ? *opts.k : saturated_taylor(d, opts.margin);
  const auto survival = survival_interval(d);
  const bool survivable = survival.contains(k);

  Report r;
  describe_distribution(r, d);
  describe_survival(r, survival);
  r.section("gain")
      .set("k", k)
      .set("k_source", opts.k ? "--k" : "saturated kelly_taylor")
      .set("n", static_cast<std::int64_t>(opts.n))
      .set("v0", opts.v0)
      .set("survivable", survivable);
  if (!survivable) {
    r.warn("K = " + format_number(k) + " is outside the survival interval " +
           interval_text(survival));
  }

  auto& perf = r.section("performance");
  perf.set("log_growth", log_growth(d, k)).set("jensen_bound", jensen_bound(d, k));
  if (d.second_moment() > 0.0) perf.set("best_performance_bound", best_performance_bound(d));
  if (d.variance() > 0.0) perf.set("merton_performance_bound", merton_performance_bound(d));

  const auto stats = gain_stats(d, k, opts.n, opts.v0);
  r.section("expected_gain")
      .set("expected_gain", stats.expected_gain)
      .set("monotone_in_n",
           expected_gain_monotone_check(d, k, std::max<std::uint64_t>(opts.n, 2)));
  r.section("gain_variance").set("gain_variance", stats.gain_variance);

  auto& lgv = r.section("log_growth_variance");
  if (survivable) {
    lgv.set("log_growth_variance", log_growth_variance(d, k, opts.n));
  } else {
    lgv.set("log_growth_variance", "unavailable");
  }
  return r;
}

Report cmd_gap(const ReturnDistribution& d, const GapOptions& opts) {
  const auto survival = survival_interval(d);
  const auto opt = solve_exact(d);
  const double k_approx = opts.k_approx ? *opts.k_approx : saturated_taylor(d, opts.margin);
  if (!survival.contains(k_approx)) {
    throw Error(ErrorKind::OutsideSurvivalInterval,
                "k_approx = " + format_number(k_approx) + " is outside the survival interval " +
                    interval_text(survival));
  }
  const double g_approx = log_growth(d, k_approx);
  const double true_gap = opt.g_star - g_approx;
  const double jensen = gap_upper_bound(d, opt.k_star, k_approx);
  const auto [x_min, x_max] = d.support_bounds();
  const double vertex = fractional_vertex_bound(opt.k_star, k_approx, x_min, x_max);
  const double log_vertex = std::log(vertex);
  const bool ordered = true_gap >= -kSandwichSlack && jensen - true_gap >= -kSandwichSlack &&
                       log_vertex - jensen >= -kSandwichSlack;

  Report r;
  describe_distribution(r, d);
  describe_survival(r, survival);
  r.section("gains")
      .set("k_star", opt.k_star)
      .set("k_approx", k_approx)
      .set("k_approx_source", opts.k_approx ? "--k-approx" : "saturated kelly_taylor");
  r.section("growth").set("g_star", opt.g_star).set("g_approx", g_approx);
  r.section("gap")
      .set("true_gap", true_gap)
      .set("jensen_bound", jensen)
      .set("vertex_bound", vertex)
      .set("log_vertex_bound", log_vertex)
      .set("sandwich_holds", ordered);
  if (!ordered) r.warn("gap ordering 0 <= true_gap <= jensen_bound <= log_vertex_bound failed");
  return r;
}

SimulateOutput cmd_simulate(const ReturnDistribution& d, const SimulateOptions& opts) {
  SimulationConfig cfg;
  cfg.k = opts.k ? *opts.k : saturated_taylor(d, opts.margin);
  cfg.horizon = opts.n;
  cfg.v0 = opts.v0;
  cfg.paths = opts.paths;
  cfg.seed = opts.seed;
  cfg.threads = opts.threads;

  SimulateOutput out;
  out.outcomes = simulate_path_outcomes(d, cfg);
  const auto sim = summarize_outcomes(out.outcomes, cfg);
  const auto survival = survival_interval(d);
  const bool survivable = survival.contains(cfg.k);

  Report& r = out.report;
  describe_distribution(r, d);
  describe_survival(r, survival);
  r.section("config")
      .set("k", cfg.k)
      .set("n", static_cast<std::int64_t>(cfg.horizon))
      .set("v0", cfg.v0)
      .set("paths", static_cast<std::int64_t>(cfg.paths))
      .set("seed", std::to_string(cfg.seed));
  if (!survivable) {
    r.warn("K = " + format_number(cfg.k) + " is outside the survival interval " +
           interval_text(survival));
  }

  const double n_paths = static_cast<double>(sim.paths);
  r.section("empirical")
      .set("gain_mean", sim.empirical_gain_mean)
      .set("gain_mean_stderr", sim.gain_mean_stderr)
      .set("gain_variance", sim.empirical_gain_variance)
      .set("gain_variance_stderr", sim.gain_variance_stderr)
      .set("log_growth_mean", sim.empirical_log_growth_mean)
      .set("log_growth_mean_stderr", sim.log_growth_mean_stderr)
      .set("log_growth_variance", sim.empirical_log_growth_variance)
      .set("log_growth_variance_stderr", sim.log_growth_variance_stderr)
      .set("min_account_value", sim.min_account_value)
      .set("ruin_paths", static_cast<std::int64_t>(sim.ruin_paths))
      .set("ruin_fraction", static_cast<double>(sim.ruin_paths) / n_paths);

  const auto stats = gain_stats(d, cfg.k, cfg.horizon, cfg.v0);
  auto& closed = r.section("closed_form");
  closed.set("expected_gain", stats.expected_gain)
      .set("gain_variance", stats.gain_variance)
      .set("log_growth", log_growth(d, cfg.k));
  if (survivable) {
    closed.set("log_growth_variance", log_growth_variance(d, cfg.k, cfg.horizon));
  } else {
    closed.set("log_growth_variance", "unavailable");
  }
  closed.set("worst_case_survival", worst_case_survival(d, cfg.k, cfg.horizon));

  auto& q = r.section("terminal_quantiles");
  const char* names[] = {"q01", "q25", "q50", "q75", "q99"};
  for (std::size_t i = 0; i < sim.terminal_quantiles.size(); ++i) {
    q.set(names[i], sim.terminal_quantiles[i]);
  }
  return out;
}

void write_paths_csv(std::ostream& out, std::span<const PathOutcome> outcomes) {
  out << "path,terminal_value,ruined\n";
  char buf[64];
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%d\n", i, outcomes[i].terminal_value,
                  outcomes[i].ruined ? 1 : 0);
    out << buf;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kelly betting analysis: exact and Taylor-approximate log-optimal gains"};
  app.require_subcommand(1);

  std::string dist_path;
  auto add_file = [&](CLI::App* sub) {
    sub->add_option("dist_file", dist_path, "Distribution file (value,probability CSV)")
        ->required();
  };

  SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "Exact log-growth maximizer");
  add_file(solve_cmd);
  auto* lo_opt = solve_cmd->add_option("--lo", solve.lo, "Lower constraint on K");
  auto* hi_opt = solve_cmd->add_option("--hi", solve.hi, "Upper constraint on K");
  solve_cmd->add_flag("--cash", solve.cash, "Cash-financed constraint K in [-1, 1]")
      ->excludes(lo_opt)
      ->excludes(hi_opt);

  ApproxOptions approx;
  auto* approx_cmd = app.add_subcommand("approx", "Taylor-approximate gain and saturation");
  add_file(approx_cmd);
  approx_cmd->add_flag("--merton", approx.merton, "Also report the mu/sigma^2 variant");
  approx_cmd->add_flag("--no-saturate", approx.no_saturate, "Skip saturation");
  approx_cmd->add_option("--margin", approx.margin, "Relative saturation margin")
      ->check(CLI::Range(0.0, 1.0));

  AnalyzeOptions analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Closed-form performance and risk");
  add_file(analyze_cmd);
  analyze_cmd->add_option("--k", analyze.k, "Feedback gain (default: saturated Taylor gain)");
  analyze_cmd->add_option("--n", analyze.n, "Horizon N")->check(CLI::PositiveNumber);
  analyze_cmd->add_option("--v0", analyze.v0, "Initial account value")->check(CLI::PositiveNumber);
  analyze_cmd->add_option("--margin", analyze.margin, "Relative saturation margin")
      ->check(CLI::Range(0.0, 1.0));

  GapOptions gap;
  auto* gap_cmd = app.add_subcommand("gap", "Approximation gap and its bounds");
  add_file(gap_cmd);
  gap_cmd->add_option("--k-approx", gap.k_approx, "Approximate gain to compare");
  gap_cmd->add_option("--margin", gap.margin, "Relative saturation margin")
      ->check(CLI::Range(0.0, 1.0));

  SimulateOptions sim;
  std::string csv_path;
  auto* sim_cmd = app.add_subcommand("simulate", "Seeded Monte Carlo of the account recursion");
  add_file(sim_cmd);
  sim_cmd->add_option("--k", sim.k, "Feedback gain (default: saturated Taylor gain)");
  sim_cmd->add_option("--n", sim.n, "Horizon N")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--v0", sim.v0, "Initial account value")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--paths", sim.paths, "Number of paths")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", sim.seed, "64-bit seed");
  sim_cmd->add_option("--threads", sim.threads, "Worker threads (0 = all cores)");
  sim_cmd->add_option("--margin", sim.margin, "Relative saturation margin")
      ->check(CLI::Range(0.0, 1.0));
  sim_cmd->add_option("--csv", csv_path, "Write per-path terminal values to this file");

  std::vector<const char*> argv{"kelly"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    const auto d = load_distribution(dist_path);
    Report report;
    if (*solve_cmd) {
      report = cmd_solve(d, solve);
    } else if (*approx_cmd) {
      report = cmd_approx(d, approx);
    } else if (*analyze_cmd) {
      report = cmd_analyze(d, analyze);
    } else if (*gap_cmd) {
      report = cmd_gap(d, gap);
    } else {
      auto result = cmd_simulate(d, sim);
      if (!csv_path.empty()) {
        std::ofstream csv(csv_path, std::ios::binary);
        if (!csv) throw Error(ErrorKind::InvalidArgument, "cannot write '" + csv_path + "'");
        write_paths_csv(csv, result.outcomes);
        if (!csv) throw Error(ErrorKind::InvalidArgument, "failed writing '" + csv_path + "'");
      }
      report = std::move(result.report);
    }
    out << report.render();
    for (const auto& w : report.warnings()) err << "warning: " << w << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace kelly::cli
