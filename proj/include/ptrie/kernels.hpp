#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference
// implementation and optional vector variants; one table is selected at
// first use from the CPU features (override with PTRIE_KERNELS=scalar).
//
// The floating-point kernels accumulate in four interleaved lanes in every
// variant, so scalar and vector results are bit-identical.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace ptrie::kernels {

struct PowerSums {
  double s2 = 0.0;
  double s3 = 0.0;
  double s4 = 0.0;
};

struct KernelTable {
  std::string_view name;

  // out[i] = #{ j : words[i] >= thresholds[j] }, thresholds ascending.
  void (*classify)(const std::uint64_t* words, std::size_t count,
                   const std::uint64_t* thresholds, std::size_t n_thresholds,
                   std::uint8_t* out);

  // sum_{k=1}^{n-1} weights[k] * x[k] * x[n-k]; needs weights, x of size >= n+1.
  double (*pair_product_sum)(const double* weights, const double* x, std::size_t n);

  // sums of (x_i - center)^{2,3,4}
  PowerSums (*central_power_sums)(const double* x, std::size_t count, double center);
};

const KernelTable& scalar_table() noexcept;

/// nullptr when the variant was not compiled in or the CPU lacks it.
const KernelTable* avx2_table() noexcept;

/// Table used by the library.
const KernelTable& active() noexcept;

inline void classify(std::span<const std::uint64_t> words,
                     std::span<const std::uint64_t> thresholds,
                     std::span<std::uint8_t> out) {
  active().classify(words.data(), words.size(), thresholds.data(), thresholds.size(),
                    out.data());
}

inline double pair_product_sum(std::span<const double> weights, std::span<const double> x,
                               std::size_t n) {
  return active().pair_product_sum(weights.data(), x.data(), n);
}

inline PowerSums central_power_sums(std::span<const double> x, double center) {
  return active().central_power_sums(x.data(), x.size(), center);
}

}  // namespace ptrie::kernels
