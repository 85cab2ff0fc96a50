#include <immintrin.h>

#include "kernel_impls.hpp"

namespace ptrie::kernels {
namespace {

void classify_avx2(const std::uint64_t* words, std::size_t count,
                   const std::uint64_t* thresholds, std::size_t n_thresholds,
                   std::uint8_t* out) {
  // AVX2 only has a signed 64-bit compare; flipping the sign bit on both
  // operands turns it into an unsigned one.
  const __m256i bias = _mm256_set1_epi64x(static_cast<long long>(0x8000000000000000ULL));
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256i w = _mm256_xor_si256(
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words + i)), bias);
    __m256i acc = _mm256_setzero_si256();
    for (std::size_t j = 0; j < n_thresholds; ++j) {
      const __m256i t =
          _mm256_xor_si256(_mm256_set1_epi64x(static_cast<long long>(thresholds[j])), bias);
      // w >= t  <=>  !(t > w); the mask is -1 where t > w.
      const __m256i lt = _mm256_cmpgt_epi64(t, w);
      acc = _mm256_sub_epi64(acc, _mm256_andnot_si256(lt, _mm256_set1_epi64x(-1)));
    }
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    for (int l = 0; l < 4; ++l) out[i + l] = static_cast<std::uint8_t>(lanes[l]);
  }
  for (; i < count; ++i) {
    unsigned c = 0;
    for (std::size_t j = 0; j < n_thresholds; ++j) c += words[i] >= thresholds[j];
    out[i] = static_cast<std::uint8_t>(c);
  }
}

double pair_product_sum_avx2(const double* weights, const double* x, std::size_t n) {
  if (n < 2) return 0.0;
  const std::size_t terms = n - 1;
  const std::size_t blocks = terms / 4;
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 1;
  for (std::size_t b = 0; b < blocks; ++b, k += 4) {
    const __m256d w = _mm256_loadu_pd(weights + k);
    const __m256d a = _mm256_loadu_pd(x + k);
    // x[n-k-3 .. n-k], reversed so lane l holds x[n-k-l]
    const __m256d r = _mm256_permute4x64_pd(_mm256_loadu_pd(x + (n - k - 3)), 0x1B);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_mul_pd(w, a), r));
  }
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  double sum = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (; k < n; ++k) sum += (weights[k] * x[k]) * x[n - k];
  return sum;
}

PowerSums central_power_sums_avx2(const double* x, std::size_t count, double center) {
  const __m256d c = _mm256_set1_pd(center);
  __m256d s2 = _mm256_setzero_pd();
  __m256d s3 = _mm256_setzero_pd();
  __m256d s4 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), c);
    const __m256d d2 = _mm256_mul_pd(d, d);
    s2 = _mm256_add_pd(s2, d2);
    s3 = _mm256_add_pd(s3, _mm256_mul_pd(d2, d));
    s4 = _mm256_add_pd(s4, _mm256_mul_pd(d2, d2));
  }
  alignas(32) double l2[4], l3[4], l4[4];
  _mm256_store_pd(l2, s2);
  _mm256_store_pd(l3, s3);
  _mm256_store_pd(l4, s4);
  PowerSums r;
  r.s2 = (l2[0] + l2[1]) + (l2[2] + l2[3]);
  r.s3 = (l3[0] + l3[1]) + (l3[2] + l3[3]);
  r.s4 = (l4[0] + l4[1]) + (l4[2] + l4[3]);
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

namespace detail {

const KernelTable& avx2_table_unchecked() noexcept {
  static const KernelTable table{"avx2", classify_avx2, pair_product_sum_avx2,
                                 central_power_sums_avx2};
  return table;
}

}  // namespace detail
}  // namespace ptrie::kernels
