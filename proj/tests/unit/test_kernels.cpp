#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <cstring>
#include <vector>

#include "ptrie/kernels.hpp"
#include "ptrie/random.hpp"

using namespace ptrie;
using namespace ptrie::kernels;

namespace {

std::vector<const KernelTable*> variants() {
  std::vector<const KernelTable*> v{&scalar_table()};
  if (const auto* t = avx2_table()) v.push_back(t);
  return v;
}

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("active table is one of the variants") {
  bool found = false;
  for (const auto* t : variants()) found = found || t == &active();
  CHECK(found);
  MESSAGE("active kernels: " << active().name);
}

TEST_CASE("classify: all variants match the scalar reference") {
  SplitMix64 gen(1);
  for (std::size_t n_thr : {0u, 1u, 2u, 3u, 7u, 255u}) {
    std::vector<std::uint64_t> thr(n_thr);
    for (auto& t : thr) t = gen();
    std::sort(thr.begin(), thr.end());
    for (std::size_t count : {0u, 1u, 3u, 4u, 5u, 16u, 17u, 1000u}) {
      std::vector<std::uint64_t> words(count);
      for (auto& w : words) w = gen();
      // Exact threshold hits and extremes.
      if (count > 2 && n_thr > 0) {
        words[0] = thr[0];
        words[1] = 0;
        words[2] = ~0ULL;
      }
      std::vector<std::uint8_t> ref(count), out(count);
      scalar_table().classify(words.data(), count, thr.data(), n_thr, ref.data());
      for (std::size_t i = 0; i < count; ++i) {
        std::size_t expect = 0;
        for (auto t : thr) expect += words[i] >= t;
        CHECK(ref[i] == expect);
      }
      for (const auto* t : variants()) {
        t->classify(words.data(), count, thr.data(), n_thr, out.data());
        CHECK(out == ref);
      }
    }
  }
}

TEST_CASE("pair_product_sum: bit-identical across variants") {
  SplitMix64 gen(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t n = 0; n < 300; ++n) {
    std::vector<double> w(n + 1), x(n + 1);
    for (auto& v : w) v = u(gen);
    for (auto& v : x) v = u(gen);
    const double ref = scalar_table().pair_product_sum(w.data(), x.data(), n);
    long double naive = 0.0L;
    for (std::size_t k = 1; k + 1 <= n; ++k) naive += (long double)w[k] * x[k] * x[n - k];
    CHECK(ref == doctest::Approx(double(naive)).epsilon(1e-12).scale(1.0));
    for (const auto* t : variants()) CHECK(bit_equal(t->pair_product_sum(w.data(), x.data(), n), ref));
  }
}

TEST_CASE("central_power_sums: bit-identical across variants") {
  SplitMix64 gen(3);
  std::normal_distribution<double> g(5.0, 2.0);
  for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 8u, 33u, 1001u}) {
    std::vector<double> x(n);
    for (auto& v : x) v = g(gen);
    const auto ref = scalar_table().central_power_sums(x.data(), n, 5.0);
    double s2 = 0, s3 = 0, s4 = 0;
    for (double v : x) {
      const double d = v - 5.0;
      s2 += d * d;
      s3 += d * d * d;
      s4 += d * d * d * d;
    }
    CHECK(ref.s2 == doctest::Approx(s2).epsilon(1e-12));
    CHECK(ref.s3 == doctest::Approx(s3).epsilon(1e-9).scale(1.0));
    CHECK(ref.s4 == doctest::Approx(s4).epsilon(1e-12));
    for (const auto* t : variants()) {
      const auto r = t->central_power_sums(x.data(), n, 5.0);
      CHECK(bit_equal(r.s2, ref.s2));
      CHECK(bit_equal(r.s3, ref.s3));
      CHECK(bit_equal(r.s4, ref.s4));
    }
  }
}
