#pragma once

#include <complex>
#include <functional>

namespace ptrie {

struct QuadratureOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-15;
  int max_intervals = 4000;
};

struct QuadratureResult {
  std::complex<double> value;
  double error = 0.0;  // estimated absolute error
  int evaluations = 0;
  bool converged = false;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature of a complex
/// integrand over [a, b].
QuadratureResult integrate(const std::function<std::complex<double>(double)>& f, double a,
                           double b, const QuadratureOptions& opts = {});

/// Growth of f near 0 and infinity: f(t) = O(t^at_zero) as t -> 0 and
/// f(t) = O(t^at_infinity) as t -> infinity. Use -infinity for faster than
/// any power.
struct MellinDecay {
  double at_zero = 0.0;
  double at_infinity = 0.0;
};

/// Mellin transform int_0^inf t^{s-1} f(t) dt by quadrature in u = log t,
/// split at t = 1, each half mapped onto [0, 1). Throws NonConvergent when
/// the decay exponents rule out absolute convergence at s.
QuadratureResult mellin_numeric(const std::function<double(double)>& f, std::complex<double> s,
                                const MellinDecay& decay, const QuadratureOptions& opts = {});

}  // namespace ptrie
