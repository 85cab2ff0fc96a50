#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ptrie/error.hpp"
#include "ptrie/random.hpp"
#include "ptrie/stats.hpp"

using namespace ptrie;
using doctest::Approx;

TEST_CASE("moments of a small sample") {
  const std::vector<double> x{1, 2, 3, 4, 10};
  const auto m = moments(x);
  CHECK(m.count == 5);
  CHECK(m.mean == Approx(4.0));
  CHECK(m.variance == Approx(12.5));
  CHECK(m.se_mean == Approx(std::sqrt(12.5 / 5)));
  // m2 = 10, m3 = 26.4*... computed by hand: deviations -3,-2,-1,0,6
  const double m2 = (9 + 4 + 1 + 0 + 36) / 5.0;
  const double m3 = (-27 - 8 - 1 + 0 + 216) / 5.0;
  const double m4 = (81 + 16 + 1 + 0 + 1296) / 5.0;
  CHECK(m.skewness == Approx(m3 / std::pow(m2, 1.5)));
  CHECK(m.excess_kurtosis == Approx(m4 / (m2 * m2) - 3));
  const auto c = moments(std::vector<double>{7, 7, 7});
  CHECK(c.variance == 0.0);
  CHECK(c.skewness == 0.0);
}

TEST_CASE("covariance") {
  const std::vector<double> x{1, 2, 3, 4}, y{2, 4, 6, 8.5};
  CHECK(covariance(x, x) == Approx(moments(x).variance));
  CHECK(covariance(x, y) == Approx((-1.5 * -3.125 + -0.5 * -1.125 + 0.5 * 0.875 + 1.5 * 3.375) / 3));
}

TEST_CASE("normality diagnostics on normal data") {
  SplitMix64 gen(12);
  std::normal_distribution<double> g;
  std::vector<double> x(10000);
  for (auto& v : x) v = g(gen);
  const auto d = normality_diagnostics(x);
  CHECK(std::abs(d.skewness) < 0.08);
  CHECK(std::abs(d.excess_kurtosis) < 0.15);
  // jackknife errors near the asymptotic sqrt(6/n), sqrt(24/n)
  CHECK(d.se_skewness == Approx(std::sqrt(6.0 / 1e4)).epsilon(0.15));
  CHECK(d.se_excess_kurtosis == Approx(std::sqrt(24.0 / 1e4)).epsilon(0.2));
  CHECK_FALSE(d.skewness_flag);
  CHECK_FALSE(d.kurtosis_flag);
}

TEST_CASE("normality diagnostics flag skewed data") {
  SplitMix64 gen(13);
  std::exponential_distribution<double> e;
  std::vector<double> x(5000);
  for (auto& v : x) v = e(gen);
  const auto d = normality_diagnostics(x);
  CHECK(d.skewness == Approx(2.0).epsilon(0.2));
  CHECK(d.skewness_flag);
  CHECK(d.kurtosis_flag);
}

TEST_CASE("normality diagnostics preconditions") {
  CHECK_THROWS_AS(normality_diagnostics(std::vector<double>(99, 1.0)), Error);
  try {
    normality_diagnostics(std::vector<double>(200, 3.0));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::degenerate_variance);
  }
}

TEST_CASE("chi-square goodness of fit") {
  // Textbook die example: 60 rolls.
  const std::vector<double> obs{5, 8, 9, 8, 10, 20};
  const std::vector<double> p(6, 1.0 / 6);
  const auto g = chi_square_test(obs, p);
  CHECK(g.statistic == Approx(13.4));
  CHECK(g.degrees_of_freedom == 5);
  CHECK(g.p_value == Approx(0.0199).epsilon(0.01));

  SplitMix64 gen(4);
  std::geometric_distribution<int> geo(0.5);
  std::vector<double> counts(30, 0.0), probs(30);
  for (int i = 0; i < 100000; ++i) counts[std::min(geo(gen), 29)] += 1;
  for (int n = 0; n < 29; ++n) probs[n] = std::ldexp(1.0, -(n + 1));
  probs[29] = std::ldexp(1.0, -29);
  const auto h = chi_square_test(counts, probs);
  CHECK(h.p_value > 0.001);
  CHECK(h.cells < 30);
}

TEST_CASE("weighted fit and autocorrelation") {
  const std::vector<double> x{0, 1, 2, 3}, y{1, 3, 5, 7}, se{1, 1, 1, 1};
  const auto f = weighted_linear_fit(x, y, se);
  CHECK(f.slope == Approx(2.0));
  CHECK(f.intercept == Approx(1.0));
  std::vector<double> wave;
  for (int i = 0; i < 64; ++i) wave.push_back(std::sin(2 * M_PI * i / 8));
  CHECK(autocorrelation(wave, 8) > 0.8);
  CHECK(autocorrelation(wave, 4) < -0.8);
}
