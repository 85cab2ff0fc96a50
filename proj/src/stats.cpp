#include "ptrie/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <numeric>

#include "ptrie/error.hpp"
#include "ptrie/kernels.hpp"

namespace ptrie {
namespace {

double mean_of(std::span<const double> x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

struct Standardized {
  double skew;
  double exkurt;
};

// From central power sums over n points (about their own mean).
Standardized standardize(double n, double s2, double s3, double s4) {
  const double m2 = s2 / n;
  const double m3 = s3 / n;
  const double m4 = s4 / n;
  if (!(m2 > 0.0)) return {0.0, 0.0};
  return {m3 / std::pow(m2, 1.5), m4 / (m2 * m2) - 3.0};
}

}  // namespace

Moments moments(std::span<const double> x) {
  Moments m;
  m.count = x.size();
  if (x.empty()) return m;
  m.mean = mean_of(x);
  if (x.size() < 2) return m;
  const auto ps = kernels::central_power_sums(x, m.mean);
  const double n = static_cast<double>(x.size());
  m.variance = ps.s2 / (n - 1.0);
  m.se_mean = std::sqrt(m.variance / n);
  const double m4 = ps.s4 / n;
  const double v = m.variance;
  // Var(s^2) = (mu4 - (n-3)/(n-1) sigma^4) / n
  m.se_variance = std::sqrt(std::max(0.0, (m4 - (n - 3.0) / (n - 1.0) * v * v) / n));
  const auto st = standardize(n, ps.s2, ps.s3, ps.s4);
  m.skewness = st.skew;
  m.excess_kurtosis = st.exkurt;
  return m;
}

double covariance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorKind::invalid_argument, "covariance: size mismatch");
  if (x.size() < 2) return 0.0;
  const double mx = mean_of(x);
  const double my = mean_of(y);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - mx) * (y[i] - my);
  return s / static_cast<double>(x.size() - 1);
}

NormalityDiagnostics normality_diagnostics(std::span<const double> x,
                                           const NormalityThresholds& thresholds) {
  if (x.size() < 100) {
    throw Error(ErrorKind::invalid_argument, "normality diagnostics need at least 100 samples");
  }
  const double n = static_cast<double>(x.size());
  const double mean = mean_of(x);
  // Raw power sums about the full-sample mean; leave-one-out moments are
  // recovered by shifting to the reduced sample's mean.
  double r1 = 0.0, r2 = 0.0, r3 = 0.0, r4 = 0.0;
  for (double v : x) {
    const double d = v - mean;
    const double d2 = d * d;
    r1 += d;
    r2 += d2;
    r3 += d2 * d;
    r4 += d2 * d2;
  }
  if (!(r2 > 0.0)) throw Error(ErrorKind::degenerate_variance, "sample variance is zero");

  NormalityDiagnostics out;
  const auto full = standardize(n, r2, r3, r4);
  out.skewness = full.skew;
  out.excess_kurtosis = full.exkurt;

  const double nm = n - 1.0;
  double sum_s = 0.0, sum_k = 0.0, sq_s = 0.0, sq_k = 0.0;
  for (double v : x) {
    const double d = v - mean;
    const double a1 = (r1 - d) / nm;  // raw moments of the reduced sample
    const double a2 = (r2 - d * d) / nm;
    const double a3 = (r3 - d * d * d) / nm;
    const double a4 = (r4 - d * d * d * d) / nm;
    const double c2 = a2 - a1 * a1;
    const double c3 = a3 - 3.0 * a1 * a2 + 2.0 * a1 * a1 * a1;
    const double c4 = a4 - 4.0 * a1 * a3 + 6.0 * a1 * a1 * a2 - 3.0 * a1 * a1 * a1 * a1;
    const auto st = standardize(1.0, c2, c3, c4);
    sum_s += st.skew;
    sum_k += st.exkurt;
    sq_s += st.skew * st.skew;
    sq_k += st.exkurt * st.exkurt;
  }
  const double var_s = std::max(0.0, sq_s / n - (sum_s / n) * (sum_s / n));
  const double var_k = std::max(0.0, sq_k / n - (sum_k / n) * (sum_k / n));
  out.se_skewness = std::sqrt((n - 1.0) * var_s);
  out.se_excess_kurtosis = std::sqrt((n - 1.0) * var_k);
  out.skewness_flag = std::abs(out.skewness) > thresholds.skewness;
  out.kurtosis_flag = std::abs(out.excess_kurtosis) > thresholds.excess_kurtosis;
  return out;
}

GoodnessOfFit chi_square_test(std::span<const double> observed, std::span<const double> probs,
                              double min_expected) {
  if (observed.size() != probs.size() || observed.empty()) {
    throw Error(ErrorKind::invalid_argument, "chi-square: observed and probs differ in size");
  }
  const double total = std::accumulate(observed.begin(), observed.end(), 0.0);
  std::vector<double> obs, expd;
  double o = 0.0, e = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    o += observed[i];
    e += probs[i] * total;
    if (e >= min_expected) {
      obs.push_back(o);
      expd.push_back(e);
      o = e = 0.0;
    }
  }
  if (e > 0.0 || o > 0.0) {
    if (expd.empty()) {
      obs.push_back(o);
      expd.push_back(e);
    } else {
      obs.back() += o;
      expd.back() += e;
    }
  }
  GoodnessOfFit g;
  g.cells = obs.size();
  for (std::size_t i = 0; i < obs.size(); ++i) {
    if (expd[i] > 0.0) g.statistic += (obs[i] - expd[i]) * (obs[i] - expd[i]) / expd[i];
  }
  if (g.cells < 2) return g;
  g.degrees_of_freedom = g.cells - 1;
  const boost::math::chi_squared dist(static_cast<double>(g.degrees_of_freedom));
  g.p_value = boost::math::cdf(boost::math::complement(dist, g.statistic));
  return g;
}

LinearFit weighted_linear_fit(std::span<const double> x, std::span<const double> y,
                              std::span<const double> se) {
  if (x.size() != y.size() || x.size() != se.size() || x.size() < 2) {
    throw Error(ErrorKind::invalid_argument, "linear fit needs matching inputs of size >= 2");
  }
  double sw = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double w = se[i] > 0.0 ? 1.0 / (se[i] * se[i]) : 1.0;
    sw += w;
    sx += w * x[i];
    sy += w * y[i];
    sxx += w * x[i] * x[i];
    sxy += w * x[i] * y[i];
  }
  const double det = sw * sxx - sx * sx;
  if (!(det > 0.0)) throw Error(ErrorKind::invalid_argument, "linear fit: x values all equal");
  LinearFit f;
  f.slope = (sw * sxy - sx * sy) / det;
  f.intercept = (sy - f.slope * sx) / sw;
  f.se_slope = std::sqrt(sw / det);
  return f;
}

double autocorrelation(std::span<const double> x, std::size_t lag) {
  if (lag >= x.size()) return 0.0;
  const double m = mean_of(x);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    den += (x[i] - m) * (x[i] - m);
    if (i + lag < x.size()) num += (x[i] - m) * (x[i + lag] - m);
  }
  return den > 0.0 ? num / den : 0.0;
}

}  // namespace ptrie
