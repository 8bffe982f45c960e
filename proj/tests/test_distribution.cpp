#include <random>
#include <sstream>

#include "doctest.h"
#include "kelly/distribution.hpp"
#include "kelly/error.hpp"
#include "kelly/simulate.hpp"
#include "oracles.hpp"

using namespace kelly;
using doctest::Approx;

namespace {

const auto kCoin = ReturnDistribution::from_atoms({{-0.9, 0.05}, {0.2, 0.95}});

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

TEST_CASE("from_atoms validates, sorts and merges") {
  const auto d = ReturnDistribution::from_atoms({{0.2, 0.95}, {-0.9, 0.05}});
  REQUIRE(d.size() == 2);
  CHECK(d.atoms()[0].value == -0.9);
  CHECK(d.support_bounds().min == -0.9);
  CHECK(d.support_bounds().max == 0.2);

  const auto point = ReturnDistribution::from_atoms({{0.5, 1.0}});
  CHECK(point.size() == 1);

  const auto merged = ReturnDistribution::from_atoms({{0.2, 0.5}, {0.2, 0.5}});
  REQUIRE(merged.size() == 1);
  CHECK(merged.atoms()[0] == Atom{0.2, 1.0});
}

TEST_CASE("from_atoms error paths") {
  CHECK(kind_of([] { ReturnDistribution::from_atoms(std::span<const Atom>{}); }) ==
        ErrorKind::EmptyDistribution);
  CHECK(kind_of([] { ReturnDistribution::from_atoms({{0.1, 0.0}, {0.2, 1.0}}); }) ==
        ErrorKind::NonPositiveProbability);
  CHECK(kind_of([] { ReturnDistribution::from_atoms({{0.1, -0.5}, {0.2, 1.5}}); }) ==
        ErrorKind::NonPositiveProbability);
  CHECK(kind_of([] { ReturnDistribution::from_atoms({{0.1, 0.5}, {0.2, 0.4}}); }) ==
        ErrorKind::ProbabilityMassNotOne);
  CHECK(kind_of([] { ReturnDistribution::from_atoms({{0.1, 0.5}, {0.2, 0.5 + 2e-12}}); }) ==
        ErrorKind::ProbabilityMassNotOne);
  CHECK(kind_of([] { ReturnDistribution::from_atoms({{INFINITY, 1.0}}); }) ==
        ErrorKind::NonFiniteValue);
  CHECK(kind_of([] { ReturnDistribution::from_atoms({{0.1, NAN}}); }) ==
        ErrorKind::NonFiniteValue);
  // 0.1 * 10 misses 1 by one ulp, well inside the tolerance.
  std::vector<Atom> tenths;
  for (int i = 0; i < 10; ++i) tenths.push_back({0.01 * i, 0.1});
  CHECK_NOTHROW(ReturnDistribution::from_atoms(tenths));
}

TEST_CASE("moments") {
  CHECK(kCoin.mean() == Approx(0.145).epsilon(1e-15));
  CHECK(kCoin.second_moment() == Approx(0.0785).epsilon(1e-15));
  CHECK(kCoin.variance() == Approx(0.057475).epsilon(1e-14));

  const auto point = ReturnDistribution::from_atoms({{0.04, 1.0}});
  CHECK(point.mean() == 0.04);
  CHECK(point.variance() == 0.0);

  const auto sym = ReturnDistribution::from_atoms({{-0.5, 0.5}, {0.5, 0.5}});
  CHECK(sym.mean() == 0.0);
  CHECK(sym.second_moment() == 0.25);
  CHECK(sym.variance() == 0.25);
}

TEST_CASE("moment identities hold on random laws") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const auto d = oracle::random_distribution(rng, 1, 6, -3.0, 3.0, false);
    CHECK(d.variance() >= 0.0);
    CHECK((d.variance() == 0.0) == (d.size() == 1));
    CHECK(std::abs(d.second_moment() - (d.variance() + d.mean() * d.mean())) <= 1e-12);
    // Round trip through its own output is the identity.
    CHECK(ReturnDistribution::from_atoms(d.atoms()) == d);
  }
}

TEST_CASE("estimate_from_samples") {
  const std::vector<double> xs = {0.2, -0.9, 0.2, 0.2};
  const auto est = estimate_from_samples(xs);
  CHECK(est.mean == Approx(-0.075).epsilon(1e-14));
  CHECK(est.variance == Approx(0.3025).epsilon(1e-14));

  const std::vector<double> flat = {1.25, 1.25, 1.25};
  CHECK(estimate_from_samples(flat).mean == 1.25);
  CHECK(estimate_from_samples(flat).variance == 0.0);

  const std::vector<double> one = {1.0};
  CHECK(kind_of([&] { estimate_from_samples(one); }) == ErrorKind::InsufficientSamples);
}

TEST_CASE("estimate_from_samples converges on draws from the coin flip") {
  const AtomSampler sample(kCoin);
  auto draw = [&](std::uint64_t seed, std::size_t n) {
    std::mt19937_64 rng(seed);
    std::vector<double> xs(n);
    for (auto& x : xs) x = sample(uniform01(rng));
    return xs;
  };

  const auto big = estimate_from_samples(draw(2024, 1'000'000));
  CHECK(std::abs(big.mean - 0.145) < 0.01);
  CHECK(std::abs(big.variance - 0.057475) < 0.01);

  // Mean absolute error over 20 seeds per decade shrinks from 1e3 to 1e6.
  double previous = INFINITY;
  for (std::size_t n : {1'000u, 10'000u, 100'000u, 1'000'000u}) {
    double err = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      err += std::abs(estimate_from_samples(draw(seed * 7919 + n, n)).mean - kCoin.mean());
    }
    err /= 20.0;
    CHECK(err < previous);
    previous = err;
  }
}

TEST_CASE("distribution file format") {
  std::istringstream good("value,probability\n# coin flip\n-0.9,0.05\n\n0.2,0.95");
  CHECK(parse_distribution(good) == kCoin);

  std::istringstream crlf("value,probability\r\n-0.9, 0.05\r\n+0.2,0.95\r\n");
  CHECK(parse_distribution(crlf) == kCoin);

  std::istringstream bad_header("x,p\n0.1,1\n");
  CHECK(kind_of([&] { parse_distribution(bad_header); }) == ErrorKind::ParseError);

  std::istringstream comment_first("# c\nvalue,probability\n0.1,1\n");
  CHECK(kind_of([&] { parse_distribution(comment_first); }) == ErrorKind::ParseError);

  std::istringstream bad_number("value,probability\n0.1,1\n0.2,abc\n");
  try {
    parse_distribution(bad_number);
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }

  std::istringstream three_fields("value,probability\n0.1,0.5,1\n");
  CHECK(kind_of([&] { parse_distribution(three_fields); }) == ErrorKind::ParseError);

  std::istringstream empty("");
  CHECK(kind_of([&] { parse_distribution(empty); }) == ErrorKind::ParseError);

  std::istringstream no_atoms("value,probability\n");
  CHECK(kind_of([&] { parse_distribution(no_atoms); }) == ErrorKind::EmptyDistribution);

  std::ostringstream out;
  write_distribution(out, kCoin);
  std::istringstream back(out.str());
  CHECK(parse_distribution(back) == kCoin);
}
