#pragma once

#include <complex>

namespace ptrie {

/// log Gamma(z) for complex z, Lanczos approximation (g = 607/128, 15
/// terms) with the reflection formula for Re z < 1/2. The imaginary part
/// is determined only modulo 2*pi; exp() of the result is exact.
std::complex<double> log_gamma(std::complex<double> z);

/// Gamma(z). Throws PoleAt at z = 0, -1, -2, ...
std::complex<double> gamma(std::complex<double> z);

}  // namespace ptrie
