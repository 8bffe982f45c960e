#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace kelly {

/// One point of a finite return law: X(k) takes `value` with `probability`.
struct Atom {
  double value = 0.0;
  double probability = 0.0;

  friend bool operator==(const Atom&, const Atom&) = default;
};

struct SupportBounds {
  double min = 0.0;
  double max = 0.0;
};

/**
 * Finite discrete law of the per-stage return X(0).
 *
 * Atoms are stored sorted ascending by value with pairwise distinct values;
 * probabilities are positive and sum to one within 1e-12. Moments are
 * computed once at construction, so every accessor is O(1) and the object is
 * safe to share between threads.
 *
 * The sign condition X_min < 0 < X_max is deliberately not enforced here: a
 * riskless law {r @ 1} is a legitimate input. Operations that need the sign
 * condition check it themselves.
 */
class ReturnDistribution {
 public:
  /// Validates and normalizes `atoms`. Bit-equal values are merged by summing
  /// their probabilities; no fuzzy merging is done.
  static ReturnDistribution from_atoms(std::span<const Atom> atoms);
  static ReturnDistribution from_atoms(std::initializer_list<Atom> atoms) {
    return from_atoms(std::span<const Atom>(atoms.begin(), atoms.size()));
  }

  std::span<const Atom> atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }

  double mean() const noexcept { return mean_; }
  double second_moment() const noexcept { return second_moment_; }
  /// Centered sum over atoms; non-negative and zero only for a point mass.
  double variance() const noexcept { return variance_; }
  SupportBounds support_bounds() const noexcept {
    return {atoms_.front().value, atoms_.back().value};
  }

  friend bool operator==(const ReturnDistribution&, const ReturnDistribution&) = default;

 private:
  explicit ReturnDistribution(std::vector<Atom> atoms);

  std::vector<Atom> atoms_;
  double mean_ = 0.0;
  double second_moment_ = 0.0;
  double variance_ = 0.0;
};

struct SampleEstimate {
  double mean = 0.0;
  double variance = 0.0;  // unbiased, divides by N - 1
};

/// Sample mean and unbiased sample variance. Requires at least two samples.
SampleEstimate estimate_from_samples(std::span<const double> samples);

// Text format:
//   value,probability
//   -0.9,0.05
//   # comment
//   0.2,0.95
// The header must be the first line. Blank lines are ignored.
ReturnDistribution parse_distribution(std::istream& in);
ReturnDistribution load_distribution(const std::string& path);
void write_distribution(std::ostream& out, const ReturnDistribution& d);

}  // namespace kelly
