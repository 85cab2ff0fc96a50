#include "ptrie/gamma.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "ptrie/error.hpp"

namespace ptrie {
namespace {

using cd = std::complex<double>;

// Godfrey's coefficients for g = 607/128.
constexpr double lanczos_g = 607.0 / 128.0;
constexpr std::array<double, 15> lanczos_c = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5,
};

cd log_gamma_right(cd z) {
  // Valid for Re z >= 1/2.
  z -= 1.0;
  cd sum = lanczos_c[0];
  for (std::size_t i = 1; i < lanczos_c.size(); ++i) sum += lanczos_c[i] / (z + static_cast<double>(i));
  const cd t = z + lanczos_g + 0.5;
  const double half_log_two_pi = 0.91893853320467274178;
  return half_log_two_pi + (z + 0.5) * std::log(t) - t + std::log(sum);
}

// log sin(pi z), stable for large |Im z|.
cd log_sin_pi(cd z) {
  const double pi = std::numbers::pi;
  // sin(pi z) is 2-periodic in Re z; reduce for accuracy.
  const double x = z.real() - 2.0 * std::floor(z.real() / 2.0);
  const double y = z.imag();
  const cd w(x, y);
  const cd i(0.0, 1.0);
  if (std::abs(y) < 5.0) return std::log(std::sin(pi * w));
  if (y > 0.0) {
    // sin(pi w) = (i/2) e^{-i pi w} (1 - e^{2 i pi w})
    return -i * pi * w + std::log(cd(0.0, 0.5)) + std::log(1.0 - std::exp(2.0 * i * pi * w));
  }
  // sin(pi w) = (-i/2) e^{i pi w} (1 - e^{-2 i pi w})
  return i * pi * w + std::log(cd(0.0, -0.5)) + std::log(1.0 - std::exp(-2.0 * i * pi * w));
}

bool is_pole(cd z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
  if (is_pole(z)) throw Error(ErrorKind::pole, "Gamma has a pole at a nonpositive integer");
  if (z.real() >= 0.5) return log_gamma_right(z);
  const double log_pi = 1.14472988584940017414;
  return log_pi - log_sin_pi(z) - log_gamma_right(1.0 - z);
}

std::complex<double> gamma(std::complex<double> z) {
  if (z.imag() == 0.0 && z.real() > 0.0 && z.real() < 171.0) return std::tgamma(z.real());
  return std::exp(log_gamma(z));
}

}  // namespace ptrie
