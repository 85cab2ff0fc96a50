#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "ptrie/asymptotics.hpp"
#include "ptrie/error.hpp"
#include "ptrie/kernels.hpp"

namespace ptrie {

// The root of P_n (n >= 2) splits its keys k : n-k with probability
// C(n,k) / (2^n - 2), k = 1..n-1, and is essential iff neither child is:
//   alpha_n = sum_k C(n,k) / (2^n - 2) (1 - alpha_k) (1 - alpha_{n-k}).
// Weights are formed in log space; they underflow to 0 at the edges for
// large n, which is harmless.
std::vector<double> indnum_alphas(std::size_t N) {
  if (N < 1) throw Error(ErrorKind::invalid_argument, "N must be at least 1");
  std::vector<double> log_fact(N + 1);
  for (std::size_t i = 0; i <= N; ++i) log_fact[i] = std::lgamma(static_cast<double>(i) + 1.0);

  std::vector<double> alpha(N + 1, 0.0);
  std::vector<double> beta(N + 1, 0.0);  // 1 - alpha
  std::vector<double> weights(N + 1, 0.0);
  alpha[0] = 0.0;
  alpha[1] = 1.0;
  beta[0] = 1.0;
  beta[1] = 0.0;
  for (std::size_t n = 2; n <= N; ++n) {
    const double nn = static_cast<double>(n);
    const double log_norm = nn * std::numbers::ln2 + std::log1p(-std::exp2(1.0 - nn));
    for (std::size_t k = 1; k < n; ++k) {
      weights[k] = std::exp(log_fact[n] - log_fact[k] - log_fact[n - k] - log_norm);
    }
    double a = kernels::pair_product_sum(weights, beta, n);
    a = std::clamp(a, 0.0, 1.0);
    alpha[n] = a;
    beta[n] = 1.0 - a;
  }
  return alpha;
}

IndnumBounds indnum_mean_bounds(const std::vector<double>& alphas) {
  if (alphas.size() < 3) throw Error(ErrorKind::invalid_argument, "need alpha_0..alpha_N, N >= 2");
  const std::size_t N = alphas.size() - 1;
  const double H = std::numbers::ln2;
  double sum = 0.0;
  for (std::size_t k = 2; k <= N; ++k) {
    const double kk = static_cast<double>(k);
    sum += (1.0 - std::exp2(1.0 - kk)) * alphas[k] / (kk * (kk - 1.0));
  }
  const double partial = 1.0 + sum / H;
  const double tail = 1.0 / (static_cast<double>(N) * H);
  return {partial / 2.0, (partial + tail) / 2.0, tail / 2.0};
}

IndnumBounds indnum_mean_bounds(std::size_t N) {
  if (N < 2) throw Error(ErrorKind::invalid_argument, "N must be at least 2");
  return indnum_mean_bounds(indnum_alphas(N));
}

}  // namespace ptrie
