#include "kelly/distribution.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "kelly/error.hpp"

namespace kelly {

namespace {

constexpr double kMassTolerance = 1e-12;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(std::string_view text, std::size_t line_no) {
  text = trim(text);
  double value = 0.0;
  // from_chars rejects a leading '+', which is a valid decimal literal.
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw Error(ErrorKind::ParseError,
                "line " + std::to_string(line_no) + ": not a decimal literal: '" +
                    std::string(text) + "'");
  }
  return value;
}

}  // namespace

ReturnDistribution::ReturnDistribution(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  for (const auto& a : atoms_) {
    mean_ += a.probability * a.value;
    second_moment_ += a.probability * a.value * a.value;
  }
  for (const auto& a : atoms_) {
    const double dev = a.value - mean_;
    variance_ += a.probability * dev * dev;
  }
  if (atoms_.size() == 1) variance_ = 0.0;
}

ReturnDistribution ReturnDistribution::from_atoms(std::span<const Atom> input) {
  if (input.empty()) {
    throw Error(ErrorKind::EmptyDistribution, "distribution needs at least one atom");
  }
  for (const auto& a : input) {
    if (!std::isfinite(a.value) || !std::isfinite(a.probability)) {
      throw Error(ErrorKind::NonFiniteValue, "atom value and probability must be finite");
    }
    if (!(a.probability > 0.0)) {
      throw Error(ErrorKind::NonPositiveProbability,
                  "probability " + std::to_string(a.probability) + " is not positive");
    }
  }

  std::vector<Atom> atoms(input.begin(), input.end());
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const Atom& a, const Atom& b) { return a.value < b.value; });

  std::vector<Atom> merged;
  merged.reserve(atoms.size());
  for (const auto& a : atoms) {
    if (!merged.empty() && merged.back().value == a.value) {
      merged.back().probability += a.probability;
    } else {
      merged.push_back(a);
    }
  }

  double mass = 0.0;
  for (const auto& a : merged) mass += a.probability;
  if (std::abs(mass - 1.0) > kMassTolerance) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", mass);
    throw Error(ErrorKind::ProbabilityMassNotOne, std::string("probabilities sum to ") + buf);
  }
  return ReturnDistribution(std::move(merged));
}

SampleEstimate estimate_from_samples(std::span<const double> samples) {
  if (samples.size() < 2) {
    throw Error(ErrorKind::InsufficientSamples, "sample variance needs at least two samples");
  }
  const double n = static_cast<double>(samples.size());
  double sum = 0.0;
  for (double x : samples) sum += x;
  const double mean = sum / n;
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  return {mean, ss / (n - 1.0)};
}

ReturnDistribution parse_distribution(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  std::vector<Atom> atoms;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!saw_header) {
      if (line_no == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
        line.erase(0, 3);
      }
      if (line != "value,probability") {
        throw Error(ErrorKind::ParseError,
                    "line 1: expected header 'value,probability', got '" + line + "'");
      }
      saw_header = true;
      continue;
    }
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto comma = body.find(',');
    if (comma == std::string_view::npos || body.find(',', comma + 1) != std::string_view::npos) {
      throw Error(ErrorKind::ParseError,
                  "line " + std::to_string(line_no) + ": expected 'value,probability'");
    }
    atoms.push_back({parse_real(body.substr(0, comma), line_no),
                     parse_real(body.substr(comma + 1), line_no)});
  }
  if (!saw_header) throw Error(ErrorKind::ParseError, "line 1: missing header");
  return ReturnDistribution::from_atoms(atoms);
}

ReturnDistribution load_distribution(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  return parse_distribution(in);
}

void write_distribution(std::ostream& out, const ReturnDistribution& d) {
  out << "value,probability\n";
  char buf[64];
  for (const auto& a : d.atoms()) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", a.value, a.probability);
    out << buf;
  }
}

}  // namespace kelly
