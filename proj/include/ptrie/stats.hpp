#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ptrie {

struct Moments {
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double se_mean = 0.0;
  double se_variance = 0.0;
  double skewness = 0.0;         // m3 / m2^{3/2}, 0 when variance is 0
  double excess_kurtosis = 0.0;  // m4 / m2^2 - 3, 0 when variance is 0
};

/// Sample moments; central sums come from the kernel layer.
Moments moments(std::span<const double> x);

/// Unbiased sample covariance.
double covariance(std::span<const double> x, std::span<const double> y);

struct NormalityThresholds {
  double skewness = 0.1;
  double excess_kurtosis = 0.2;
};

struct NormalityDiagnostics {
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  double se_skewness = 0.0;  // jackknife
  double se_excess_kurtosis = 0.0;
  bool skewness_flag = false;
  bool kurtosis_flag = false;
};

/// Standardized third and fourth moments with jackknife standard errors.
/// Throws InvalidArgument below 100 samples, DegenerateVariance when all
/// samples are equal.
NormalityDiagnostics normality_diagnostics(std::span<const double> x,
                                           const NormalityThresholds& thresholds = {});

struct GoodnessOfFit {
  double statistic = 0.0;
  std::size_t degrees_of_freedom = 0;
  double p_value = 1.0;
  std::size_t cells = 0;  // after pooling
};

/// Pearson chi-square test of observed counts against cell probabilities.
/// Adjacent cells are pooled until every expected count reaches
/// min_expected; the last probability may be a tail cell.
GoodnessOfFit chi_square_test(std::span<const double> observed, std::span<const double> probs,
                              double min_expected = 5.0);

/// Slope of y on x by weighted least squares (weights 1/se^2) and its
/// standard error.
struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
  double se_slope = 0.0;
};
LinearFit weighted_linear_fit(std::span<const double> x, std::span<const double> y,
                              std::span<const double> se);

/// Sample autocorrelation at the given lag.
double autocorrelation(std::span<const double> x, std::size_t lag);

}  // namespace ptrie
