#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "ptrie/source.hpp"
#include "ptrie/tree.hpp"

namespace ptrie {

enum class Method { closed_form, truncated_series, quadrature, recursion_bounded };

const char* to_string(Method m) noexcept;

struct AsymptoticConstant {
  std::complex<double> value;
  double error_bound = 0.0;
  Method method = Method::closed_form;
};

inline constexpr double default_series_tol = 1e-12;

// Mellin transforms at s for the size-k fringe toll phi_k (k >= 2) pulled
// back to tries. On the real line:
//   f_E(l) = l^k/k! e^{-l} (1 - rho(k))
//   f_V(l) = f_E(l) - sum*_a ((1-rho(k))/k!)^2 l^{2k} p_a^k e^{-l(1+p_a)}
//   f_C(l) = (k - l) f_E(l)
// where sum*_a runs over all finite strings, every nonempty one twice.

/// (1 - rho(k)) Gamma(k+s) / k!. Throws PoleAt when k+s is a nonpositive
/// integer.
std::complex<double> fe_k_star(const SourceDistribution& d, std::size_t k, std::complex<double> s);

/// Variance transform, string sum truncated once its tail bound drops
/// below tol. Throws NonConvergent for Re s <= -k.
AsymptoticConstant fv_k_star(const SourceDistribution& d, std::size_t k, std::complex<double> s,
                             double tol = default_series_tol);

/// -s * fe_k_star(d, k, s), the transform of f_C.
std::complex<double> fc_k_star_at(const SourceDistribution& d, std::size_t k,
                                  std::complex<double> s);

/// Fourier coefficient c^C_m = c^E_m (1 + 2 pi i m / d_p) of psi_C. For
/// aperiodic sources this is fe_k_star(d, k, -1) for every m.
std::complex<double> fc_k_star(const SourceDistribution& d, std::size_t k, int m);

/// Pointwise f_E, f_V, f_C for phi_k.
double fe_k(const SourceDistribution& d, std::size_t k, double lambda);
AsymptoticConstant fv_k(const SourceDistribution& d, std::size_t k, double lambda,
                        double tol = default_series_tol);
double fc_k(const SourceDistribution& d, std::size_t k, double lambda);

enum class Component { E, V, C };

/// f_X^*(-1 - 2 pi i m / d_p). Throws Aperiodic when d_p = 0.
AsymptoticConstant fourier_coefficient(const SourceDistribution& d, std::size_t k, Component x,
                                       int m, double tol = default_series_tol);

/// Truncated Fourier series of a periodic limit function psi_X, or a
/// constant when period == 0.
struct FourierSeries {
  double period = 0.0;
  int truncation = 0;                             // M
  std::vector<std::complex<double>> coefficients;  // c_{-M}, ..., c_M
  double truncation_residue = 0.0;  // sum of |c_m| for M < |m| <= 2M

  std::complex<double> coefficient(int m) const { return coefficients.at(m + truncation); }
  static FourierSeries constant(double value);
};

inline constexpr int default_fourier_terms = 8;

FourierSeries fourier_series(const SourceDistribution& d, std::size_t k, Component x,
                             int terms = default_fourier_terms, double tol = default_series_tol);

/// Real part of the series at t; the constant for aperiodic series.
double psi_eval(const FourierSeries& series, double t);

/// Everything the limit theorems need about one toll.
struct TollAsymptotics {
  double chi = 0.0;
  FourierSeries psi_e;
  FourierSeries psi_v;
  FourierSeries psi_c;
};

TollAsymptotics toll_asymptotics_phi_k(const SourceDistribution& d, std::size_t k,
                                       int terms = default_fourier_terms,
                                       double tol = default_series_tol);
/// The leaf indicator: chi = 1 and all f_X vanish.
TollAsymptotics toll_asymptotics_leaf(const SourceDistribution& d);

/// Limit of E[Phi]/n along t = log n: psi_E(t)/H + chi.
double mean_limit(const SourceDistribution& d, const TollAsymptotics& a, double t);

struct SigmaConstants {
  double sigma2_hat = 0.0;  // Poisson model, variance / lambda
  double sigma2 = 0.0;      // fixed-n model, variance / n
};

/// Mean-term constants, from f_X^*(-1):
///   sigma_hat^2 = chi^2 + f_V/H,  sigma^2 = f_V/H - f_C^2/H^2 - 2 chi f_C/H.
SigmaConstants sigma_constants(const SourceDistribution& d, const TollAsymptotics& a);
/// The same with f_X^*(-1) replaced by psi_X(t).
SigmaConstants sigma_constants(const SourceDistribution& d, const TollAsymptotics& a, double t);

struct LinkedMoments {
  double mean = 0.0;
  double variance = 0.0;
};

/// Trie moments of Phi_k from patricia moments: every patricia node with k
/// keys stands for a Geom_1(1 - rho(k)) chain of trie nodes.
LinkedMoments link_trie_patricia(double mean_p, double var_p, std::size_t k,
                                 const SourceDistribution& d);

/// (1 - rho(k)) / ((J + H) k (k-1)): limit share of nodes whose fringe tree
/// has k leaves.
double fringe_limit(const SourceDistribution& d, std::size_t k);

/// (1 - rho(k)) / (H k (k-1)): mean-term limit of E[Phi_k]/n.
double fringe_mean_limit(const SourceDistribution& d, std::size_t k);

/// P(P_k = shape) * fringe_mean_limit(d, k). Throws UnaryNode.
double shape_limit(const SourceDistribution& d, const Tree& shape);

/// sum_{k=2}^{K} (1 - rho(k)) / (k (k-1)); increases to J as K grows.
double coentropy_partial_sum(const SourceDistribution& d, std::size_t K);

/// Independence number of random patricia tries on the binary symmetric
/// source: alpha_n = P(root of P_n is essential).
std::vector<double> indnum_alphas(std::size_t N);

struct IndnumBounds {
  double lower = 0.0;
  double upper = 0.0;
  double width_bound = 0.0;  // 1 / (2 N H)
};

/// Interval for the limit share of essential nodes, from alpha_2..alpha_N
/// with the fringe sizes above N bounded by their total mass.
IndnumBounds indnum_mean_bounds(std::size_t N);
IndnumBounds indnum_mean_bounds(const std::vector<double>& alphas);

}  // namespace ptrie
