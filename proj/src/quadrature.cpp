#include "ptrie/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "ptrie/error.hpp"

namespace ptrie {
namespace {

using cd = std::complex<double>;

// Kronrod nodes (positive half, descending) and weights; Gauss weights for
// the embedded 7-point rule sit on the odd Kronrod indices.
constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b;
  cd value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gauss_kronrod(const std::function<cd(double)>& f, double a, double b, int& evals) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const cd fc = f(center);
  cd kronrod = fc * wgk[7];
  cd gauss = fc * wg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * xgk[j];
    const cd sum = f(center - dx) + f(center + dx);
    kronrod += wgk[j] * sum;
    if (j % 2 == 1) gauss += wg[j / 2] * sum;
  }
  evals += 15;
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

QuadratureResult integrate(const std::function<cd(double)>& f, double a, double b,
                           const QuadratureOptions& opts) {
  QuadratureResult r;
  std::priority_queue<Segment> heap;
  heap.push(gauss_kronrod(f, a, b, r.evaluations));
  cd total = heap.top().value;
  double error = heap.top().error;
  int intervals = 1;
  while (error > std::max(opts.abs_tol, opts.rel_tol * std::abs(total)) &&
         intervals < opts.max_intervals) {
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      heap.push(worst);
      break;
    }
    const Segment left = gauss_kronrod(f, worst.a, mid, r.evaluations);
    const Segment right = gauss_kronrod(f, mid, worst.b, r.evaluations);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }
  // Re-sum to shed accumulated cancellation from the running updates.
  total = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  r.value = total;
  r.error = error;
  r.converged = error <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total));
  return r;
}

QuadratureResult mellin_numeric(const std::function<double(double)>& f, std::complex<double> s,
                                const MellinDecay& decay, const QuadratureOptions& opts) {
  if (!(s.real() + decay.at_zero > 0.0) || !(s.real() + decay.at_infinity < 0.0)) {
    throw Error(ErrorKind::non_convergent, "Mellin integral does not converge absolutely at s");
  }
  // t^{s-1} f(t) dt = e^{s u} f(e^u) du
  auto integrand_u = [&](double u) -> cd {
    const double t = std::exp(u);
    if (t == 0.0 || !std::isfinite(t)) return 0.0;
    const double ft = f(t);
    if (ft == 0.0) return 0.0;
    const double mag = std::exp(s.real() * u) * ft;
    if (!std::isfinite(mag)) return 0.0;
    return mag * cd(std::cos(s.imag() * u), std::sin(s.imag() * u));
  };
  // u = x/(1-x) on [0,1) for t >= 1 and u = -x/(1-x) for t <= 1.
  auto upper = [&](double x) -> cd {
    const double one_minus = 1.0 - x;
    return integrand_u(x / one_minus) / (one_minus * one_minus);
  };
  auto lower = [&](double x) -> cd {
    const double one_minus = 1.0 - x;
    return integrand_u(-x / one_minus) / (one_minus * one_minus);
  };
  QuadratureOptions half = opts;
  half.abs_tol = 0.5 * opts.abs_tol;
  const QuadratureResult hi = integrate(upper, 0.0, 1.0, half);
  const QuadratureResult lo = integrate(lower, 0.0, 1.0, half);
  QuadratureResult r;
  r.value = hi.value + lo.value;
  r.error = hi.error + lo.error;
  r.evaluations = hi.evaluations + lo.evaluations;
  r.converged = hi.converged && lo.converged;
  return r;
}

}  // namespace ptrie
