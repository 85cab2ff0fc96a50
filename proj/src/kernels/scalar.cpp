#include "ptrie/kernels.hpp"

#include "kernel_impls.hpp"

namespace ptrie::kernels {
namespace {

void classify_scalar(const std::uint64_t* words, std::size_t count,
                     const std::uint64_t* thresholds, std::size_t n_thresholds,
                     std::uint8_t* out) {
  for (std::size_t i = 0; i < count; ++i) {
    unsigned c = 0;
    for (std::size_t j = 0; j < n_thresholds; ++j) c += words[i] >= thresholds[j];
    out[i] = static_cast<std::uint8_t>(c);
  }
}

double pair_product_sum_scalar(const double* weights, const double* x, std::size_t n) {
  if (n < 2) return 0.0;
  const std::size_t terms = n - 1;
  const std::size_t blocks = terms / 4;
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t k = 1;
  for (std::size_t b = 0; b < blocks; ++b, k += 4) {
    for (std::size_t l = 0; l < 4; ++l) {
      lane[l] += (weights[k + l] * x[k + l]) * x[n - k - l];
    }
  }
  double sum = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (; k < n; ++k) sum += (weights[k] * x[k]) * x[n - k];
  return sum;
}

PowerSums central_power_sums_scalar(const double* x, std::size_t count, double center) {
  double s2[4] = {0, 0, 0, 0};
  double s3[4] = {0, 0, 0, 0};
  double s4[4] = {0, 0, 0, 0};
  const std::size_t blocks = count / 4;
  std::size_t i = 0;
  for (std::size_t b = 0; b < blocks; ++b, i += 4) {
    for (std::size_t l = 0; l < 4; ++l) {
      const double d = x[i + l] - center;
      const double d2 = d * d;
      s2[l] += d2;
      s3[l] += d2 * d;
      s4[l] += d2 * d2;
    }
  }
  PowerSums r;
  r.s2 = (s2[0] + s2[1]) + (s2[2] + s2[3]);
  r.s3 = (s3[0] + s3[1]) + (s3[2] + s3[3]);
  r.s4 = (s4[0] + s4[1]) + (s4[2] + s4[3]);
  for (; i < count; ++i) {
    const double d = x[i] - center;
    const double d2 = d * d;
    r.s2 += d2;
    r.s3 += d2 * d;
    r.s4 += d2 * d2;
  }
  return r;
}

}  // namespace

const KernelTable& scalar_table() noexcept {
  static const KernelTable table{"scalar", classify_scalar, pair_product_sum_scalar,
                                 central_power_sums_scalar};
  return table;
}

}  // namespace ptrie::kernels
