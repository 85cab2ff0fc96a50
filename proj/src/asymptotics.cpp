#include "ptrie/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "ptrie/error.hpp"
#include "ptrie/gamma.hpp"
#include "ptrie/shapes.hpp"

namespace ptrie {
namespace {

using cd = std::complex<double>;

constexpr std::size_t max_series_length = 20000;

double log_factorial(std::size_t n) { return std::lgamma(static_cast<double>(n) + 1.0); }

// Characters grouped by probability; strings with equal class counts share
// their probability.
struct ProbClass {
  double p;
  double log_size;
};

std::vector<ProbClass> probability_classes(const SourceDistribution& d) {
  std::vector<double> ps(d.probs().begin(), d.probs().end());
  std::sort(ps.begin(), ps.end());
  std::vector<ProbClass> out;
  std::size_t i = 0;
  while (i < ps.size()) {
    std::size_t j = i;
    while (j < ps.size() && ps[j] == ps[i]) ++j;
    out.push_back({ps[i], std::log(static_cast<double>(j - i))});
    i = j;
  }
  return out;
}

// Calls visit(log_count, log_p) for every class composition of length n,
// where log_count is the log of the number of strings with that
// composition and log_p the log of their common probability.
void for_each_composition(const std::vector<ProbClass>& classes, std::size_t n,
                          const std::function<void(double, double)>& visit) {
  const std::size_t r = classes.size();
  std::vector<std::size_t> counts(r, 0);
  const double lnf = log_factorial(n);
  std::function<void(std::size_t, std::size_t, double, double)> rec =
      [&](std::size_t j, std::size_t left, double log_count, double log_p) {
        if (j + 1 == r) {
          const double c = static_cast<double>(left);
          visit(log_count - log_factorial(left) + c * classes[j].log_size,
                log_p + c * std::log(classes[j].p));
          return;
        }
        for (std::size_t c = 0; c <= left; ++c) {
          const double cc = static_cast<double>(c);
          rec(j + 1, left - c, log_count - log_factorial(c) + cc * classes[j].log_size,
              log_p + cc * std::log(classes[j].p));
        }
      };
  rec(0, n, lnf, 0.0);
}

struct StarSum {
  cd value;
  double tail = 0.0;
};

// sum*_a p_a^k g(p_a), truncated after the first length L whose remaining
// mass bound scale * 2 rho(k)^{L+1} / (1 - rho(k)) is below tol. Requires
// |g(p)| <= scale on (0, 1].
StarSum star_sum(const SourceDistribution& d, std::size_t k, const std::function<cd(double)>& g,
                 double scale, double tol) {
  const auto classes = probability_classes(d);
  const double rk = rho(d, static_cast<double>(k));
  const double kk = static_cast<double>(k);
  StarSum out;
  out.value = g(1.0);
  for (std::size_t n = 1;; ++n) {
    cd level = 0.0;
    for_each_composition(classes, n, [&](double log_count, double log_p) {
      const double weight = std::exp(log_count + kk * log_p);
      if (weight == 0.0) return;
      level += weight * g(std::exp(log_p));
    });
    out.value += 2.0 * level;
    out.tail = scale * 2.0 * std::pow(rk, static_cast<double>(n + 1)) / (1.0 - rk);
    if (out.tail < tol) break;
    if (n >= max_series_length) {
      throw Error(ErrorKind::non_convergent, "string sum needs more than " +
                                                 std::to_string(max_series_length) + " levels");
    }
  }
  return out;
}

void require_k(std::size_t k) {
  if (k < 2) throw Error(ErrorKind::invalid_argument, "fringe size k must be at least 2");
}

double prefactor(const SourceDistribution& d, std::size_t k) {
  return (1.0 - rho(d, static_cast<double>(k))) / std::exp(log_factorial(k));
}

}  // namespace

const char* to_string(Method m) noexcept {
  switch (m) {
    case Method::closed_form: return "closed-form";
    case Method::truncated_series: return "truncated-series";
    case Method::quadrature: return "quadrature";
    case Method::recursion_bounded: return "recursion-bounded";
  }
  return "?";
}

cd fe_k_star(const SourceDistribution& d, std::size_t k, cd s) {
  require_k(k);
  const cd z = static_cast<double>(k) + s;
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real())) {
    throw Error(ErrorKind::pole, "Gamma(k+s) has a pole at s = " + std::to_string(s.real()));
  }
  if (s == cd(-1.0)) {
    const double kk = static_cast<double>(k);
    return (1.0 - rho(d, kk)) / (kk * (kk - 1.0));
  }
  return prefactor(d, k) * gamma(z);
}

AsymptoticConstant fv_k_star(const SourceDistribution& d, std::size_t k, cd s, double tol) {
  require_k(k);
  if (!(tol > 0.0)) throw Error(ErrorKind::invalid_argument, "tolerance must be positive");
  const double kk = static_cast<double>(k);
  if (!(s.real() > -kk)) {
    throw Error(ErrorKind::non_convergent, "Mellin transform of f_V needs Re s > -k");
  }
  const double a = prefactor(d, k);
  const cd g2k = gamma(s + 2.0 * kk);
  const cd e = -(s + 2.0 * kk);
  // |(1+p)^e| <= 1 because Re e < 0 in the strip
  const StarSum sum = star_sum(
      d, k, [&](double p) { return std::exp(e * std::log1p(p)); }, a * a * std::abs(g2k), tol);
  AsymptoticConstant out;
  out.value = fe_k_star(d, k, s) - a * a * g2k * sum.value;
  out.error_bound = sum.tail;
  out.method = Method::truncated_series;
  return out;
}

cd fc_k_star_at(const SourceDistribution& d, std::size_t k, cd s) { return -s * fe_k_star(d, k, s); }

cd fc_k_star(const SourceDistribution& d, std::size_t k, int m) {
  require_k(k);
  const double dp = periodicity(d);
  if (dp == 0.0 || m == 0) return fe_k_star(d, k, -1.0);
  const cd shift(0.0, 2.0 * std::numbers::pi * m / dp);
  return fe_k_star(d, k, -1.0 - shift) * (1.0 + shift);
}

double fe_k(const SourceDistribution& d, std::size_t k, double lambda) {
  require_k(k);
  if (lambda <= 0.0) return 0.0;
  const double kk = static_cast<double>(k);
  return (1.0 - rho(d, kk)) * std::exp(kk * std::log(lambda) - lambda - log_factorial(k));
}

AsymptoticConstant fv_k(const SourceDistribution& d, std::size_t k, double lambda, double tol) {
  require_k(k);
  AsymptoticConstant out;
  out.method = Method::truncated_series;
  if (lambda <= 0.0) return out;
  const double kk = static_cast<double>(k);
  const double a = prefactor(d, k);
  // l^{2k} e^{-l(1+p)} <= l^{2k} e^{-l}
  const double log_scale = 2.0 * std::log(a) + 2.0 * kk * std::log(lambda) - lambda;
  const StarSum sum = star_sum(
      d, k, [&](double p) { return cd(std::exp(log_scale - lambda * p)); }, std::exp(log_scale),
      tol);
  out.value = fe_k(d, k, lambda) - sum.value.real();
  out.error_bound = sum.tail;
  return out;
}

double fc_k(const SourceDistribution& d, std::size_t k, double lambda) {
  return (static_cast<double>(k) - lambda) * fe_k(d, k, lambda);
}

AsymptoticConstant fourier_coefficient(const SourceDistribution& d, std::size_t k, Component x,
                                       int m, double tol) {
  const double dp = periodicity(d);
  if (dp == 0.0) throw Error(ErrorKind::aperiodic, "source has no lattice period");
  const cd s(-1.0, -2.0 * std::numbers::pi * m / dp);
  switch (x) {
    case Component::E: return {fe_k_star(d, k, s), 0.0, Method::closed_form};
    case Component::V: return fv_k_star(d, k, s, tol);
    case Component::C: return {fc_k_star(d, k, m), 0.0, Method::closed_form};
  }
  return {};
}

FourierSeries FourierSeries::constant(double value) {
  FourierSeries s;
  s.coefficients = {value};
  return s;
}

FourierSeries fourier_series(const SourceDistribution& d, std::size_t k, Component x, int terms,
                             double tol) {
  if (terms < 0) throw Error(ErrorKind::invalid_argument, "number of Fourier terms must be >= 0");
  const double dp = periodicity(d);
  if (dp == 0.0) {
    switch (x) {
      case Component::E:
      case Component::C: return FourierSeries::constant(fe_k_star(d, k, -1.0).real());
      case Component::V: return FourierSeries::constant(fv_k_star(d, k, -1.0, tol).value.real());
    }
  }
  FourierSeries s;
  s.period = dp;
  s.truncation = terms;
  s.coefficients.resize(2 * static_cast<std::size_t>(terms) + 1);
  for (int m = 0; m <= terms; ++m) {
    const cd c = fourier_coefficient(d, k, x, m, tol).value;
    s.coefficients[m + terms] = c;
    s.coefficients[terms - m] = std::conj(c);
  }
  s.coefficients[terms] = s.coefficients[terms].real();
  for (int m = terms + 1; m <= 2 * terms; ++m) {
    s.truncation_residue += 2.0 * std::abs(fourier_coefficient(d, k, x, m, tol).value);
  }
  return s;
}

double psi_eval(const FourierSeries& series, double t) {
  if (series.period == 0.0) return series.coefficients.at(0).real();
  const int M = series.truncation;
  double sum = series.coefficient(0).real();
  // c_{-m} = conj(c_m), so each pair contributes 2 Re(c_m e^{i w m t})
  for (int m = 1; m <= M; ++m) {
    const double w = 2.0 * std::numbers::pi * m * t / series.period;
    sum += 2.0 * (series.coefficient(m) * cd(std::cos(w), std::sin(w))).real();
  }
  return sum;
}

TollAsymptotics toll_asymptotics_phi_k(const SourceDistribution& d, std::size_t k, int terms,
                                       double tol) {
  TollAsymptotics a;
  a.chi = 0.0;
  a.psi_e = fourier_series(d, k, Component::E, terms, tol);
  a.psi_v = fourier_series(d, k, Component::V, terms, tol);
  a.psi_c = fourier_series(d, k, Component::C, terms, tol);
  return a;
}

TollAsymptotics toll_asymptotics_leaf(const SourceDistribution&) {
  TollAsymptotics a;
  a.chi = 1.0;
  a.psi_e = FourierSeries::constant(0.0);
  a.psi_v = FourierSeries::constant(0.0);
  a.psi_c = FourierSeries::constant(0.0);
  return a;
}

double mean_limit(const SourceDistribution& d, const TollAsymptotics& a, double t) {
  return psi_eval(a.psi_e, t) / entropy(d) + a.chi;
}

namespace {
SigmaConstants sigma_from(double H, double chi, double fv, double fc) {
  SigmaConstants s;
  s.sigma2_hat = chi * chi + fv / H;
  s.sigma2 = fv / H - fc * fc / (H * H) - 2.0 * chi * fc / H;
  return s;
}
}  // namespace

SigmaConstants sigma_constants(const SourceDistribution& d, const TollAsymptotics& a) {
  return sigma_from(entropy(d), a.chi, a.psi_v.coefficient(0).real(),
                    a.psi_c.coefficient(0).real());
}

SigmaConstants sigma_constants(const SourceDistribution& d, const TollAsymptotics& a, double t) {
  return sigma_from(entropy(d), a.chi, psi_eval(a.psi_v, t), psi_eval(a.psi_c, t));
}

LinkedMoments link_trie_patricia(double mean_p, double var_p, std::size_t k,
                                 const SourceDistribution& d) {
  require_k(k);
  const double r = rho(d, static_cast<double>(k));
  const double q = 1.0 - r;
  return {mean_p / q, r / (q * q) * mean_p + var_p / (q * q)};
}

double fringe_limit(const SourceDistribution& d, std::size_t k) {
  return fe_k_star(d, k, -1.0).real() / (coentropy(d) + entropy(d));
}

double fringe_mean_limit(const SourceDistribution& d, std::size_t k) {
  return fe_k_star(d, k, -1.0).real() / entropy(d);
}

double shape_limit(const SourceDistribution& d, const Tree& shape) {
  const double p = shape_probability(shape, d);
  return p * fringe_mean_limit(d, shape.leaf_count());
}

double coentropy_partial_sum(const SourceDistribution& d, std::size_t K) {
  double sum = 0.0;
  for (std::size_t k = 2; k <= K; ++k) sum += fe_k_star(d, k, -1.0).real();
  return sum;
}

}  // namespace ptrie
