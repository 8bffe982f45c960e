#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kelly/approx.hpp"
#include "kelly/distribution.hpp"
#include "kelly/report.hpp"
#include "kelly/simulate.hpp"

namespace kelly::cli {

struct SolveOptions {
  std::optional<double> lo;
  std::optional<double> hi;
  bool cash = false;
};

struct ApproxOptions {
  bool merton = false;
  bool no_saturate = false;
  double margin = kDefaultSaturationMargin;
};

struct AnalyzeOptions {
  std::optional<double> k;  // defaults to the saturated Taylor gain
  std::uint64_t n = 1;
  double v0 = 1.0;
  double margin = kDefaultSaturationMargin;
};

struct GapOptions {
  std::optional<double> k_approx;  // defaults to the saturated Taylor gain
  double margin = kDefaultSaturationMargin;
};

struct SimulateOptions {
  std::optional<double> k;  // defaults to the saturated Taylor gain
  std::uint64_t n = 1;
  double v0 = 1.0;
  std::uint64_t paths = 10000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  double margin = kDefaultSaturationMargin;
};

Report cmd_solve(const ReturnDistribution& d, const SolveOptions& opts);
Report cmd_approx(const ReturnDistribution& d, const ApproxOptions& opts);
Report cmd_analyze(const ReturnDistribution& d, const AnalyzeOptions& opts);
Report cmd_gap(const ReturnDistribution& d, const GapOptions& opts);

struct SimulateOutput {
  Report report;
  std::vector<PathOutcome> outcomes;
};

SimulateOutput cmd_simulate(const ReturnDistribution& d, const SimulateOptions& opts);

/// `path,terminal_value,ruined`, one row per path in path order; values with
/// 17 significant digits so they round-trip.
void write_paths_csv(std::ostream& out, std::span<const PathOutcome> outcomes);

/// Entry point behind the `kelly` executable. `args` excludes the program
/// name. Reports go to `out`; warnings and errors go to `err`. Returns the
/// process exit code: 0 on success, non-zero on any error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kelly::cli
