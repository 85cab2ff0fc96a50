#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ptrie/asymptotics.hpp"
#include "ptrie/error.hpp"
#include "ptrie/quadrature.hpp"
#include "ptrie/shapes.hpp"

using namespace ptrie;
using cd = std::complex<double>;
using doctest::Approx;

namespace {

const SourceDistribution sym({0.5, 0.5});
const SourceDistribution skew({0.3, 0.7});
const SourceDistribution tern = SourceDistribution::uniform(3);

// Direct evaluation of sum*_a p_a^k / (1+p_a)^{2k-1} for the binary
// symmetric source, where all 2^n strings of length n have probability 2^-n.
long double star_sum_symmetric(std::size_t k) {
  const long double e = 2.0L * k - 1.0L;
  long double sum = 1.0L / std::pow(2.0L, e);
  for (int n = 1; n < 200; ++n) {
    const long double p = std::ldexp(1.0L, -n);
    sum += 2.0L * std::ldexp(1.0L, n) * std::pow(p, (long double)k) / std::pow(1.0L + p, e);
  }
  return sum;
}

}  // namespace

TEST_CASE("fe_star at s = -1") {
  CHECK(fe_k_star(sym, 2, -1.0).real() == Approx(0.25).epsilon(1e-15));
  CHECK(fe_k_star(sym, 3, -1.0).real() == Approx(0.125).epsilon(1e-15));
  for (const auto& d : {sym, skew, tern}) {
    for (std::size_t k = 2; k <= 30; ++k) {
      const double kk = double(k);
      CHECK(std::abs(fe_k_star(d, k, -1.0).real() * kk * (kk - 1) + rho(d, kk) - 1.0) < 1e-14);
    }
  }
  // The Gamma form agrees with the simplified one next to s = -1.
  CHECK(fe_k_star(sym, 4, cd(-1.0 + 1e-9, 0)).real() == Approx(0.875 / 12).epsilon(1e-8));
  CHECK_THROWS_AS(fe_k_star(sym, 2, -2.0), Error);
  CHECK_THROWS_AS(fe_k_star(sym, 3, -5.0), Error);
  CHECK_THROWS_AS(fe_k_star(sym, 1, -0.5), Error);
}

TEST_CASE("fe_star agrees with Mellin quadrature") {
  for (const auto& d : {sym, skew, tern}) {
    for (std::size_t k = 2; k <= 6; ++k) {
      const auto q = mellin_numeric([&](double t) { return fe_k(d, k, t); }, -1.0,
                                    {double(k), -INFINITY});
      const double exact = fe_k_star(d, k, -1.0).real();
      CHECK(std::abs(q.value.real() - exact) / exact < 1e-8);
      for (cd s : {cd(-0.5, 2.0), cd(0.7, -4.0)}) {
        const auto qs = mellin_numeric([&](double t) { return fe_k(d, k, t); }, s,
                                       {double(k), -INFINITY});
        CHECK(std::abs(qs.value - fe_k_star(d, k, s)) / std::abs(fe_k_star(d, k, s)) < 1e-8);
      }
    }
  }
}

TEST_CASE("fv_star closed series") {
  for (std::size_t k = 2; k <= 6; ++k) {
    const auto v = fv_k_star(sym, k, -1.0);
    const double kk = double(k);
    const double a = (1 - std::pow(2.0, 1 - kk)) / std::tgamma(kk + 1);
    const long double ref = (1 - std::pow(2.0, 1 - kk)) / (kk * (kk - 1)) -
                            std::tgamma(2 * kk - 1) * a * a * star_sum_symmetric(k);
    CHECK(std::abs(v.value.real() - double(ref)) < 1e-12);
    CHECK(v.value.real() > 0.0);
    CHECK(v.value.real() < fe_k_star(sym, k, -1.0).real());
    CHECK(v.method == Method::truncated_series);
  }
}

TEST_CASE("fv_star truncation is self-consistent") {
  for (const auto& d : {sym, skew, tern, SourceDistribution({0.1, 0.2, 0.3, 0.4})}) {
    for (std::size_t k : {2u, 3u, 5u}) {
      for (double tol : {1e-6, 1e-9, 1e-12}) {
        const auto a = fv_k_star(d, k, -1.0, tol);
        const auto b = fv_k_star(d, k, -1.0, tol / 10);
        CHECK(a.error_bound < tol);
        CHECK(std::abs(a.value - b.value) <= a.error_bound);
      }
    }
  }
  CHECK_THROWS_AS(fv_k_star(sym, 2, -2.0), Error);
  CHECK_THROWS_AS(fv_k_star(sym, 3, cd(-3.5, 1.0)), Error);
}

TEST_CASE("fv_star agrees with quadrature of f_V") {
  for (const auto& d : {sym, skew, tern}) {
    for (std::size_t k = 2; k <= 4; ++k) {
      const auto q = mellin_numeric([&](double t) { return fv_k(d, k, t).value.real(); }, -1.0,
                                    {double(k), -INFINITY});
      const double exact = fv_k_star(d, k, -1.0).value.real();
      CHECK(std::abs(q.value.real() - exact) / exact < 1e-7);
    }
  }
}

TEST_CASE("Fourier coefficients") {
  const double dp = std::numbers::ln2;
  const cd s1(-1.0, -2 * std::numbers::pi / dp);
  const auto c1 = fourier_coefficient(sym, 2, Component::E, 1);
  const auto q = mellin_numeric([&](double t) { return fe_k(sym, 2, t); }, s1, {2.0, -INFINITY});
  CHECK(std::abs(q.value - c1.value) < 1e-12);
  CHECK(std::abs(q.value - c1.value) / std::abs(c1.value) < 1e-8);

  const auto v1 = fourier_coefficient(sym, 2, Component::V, 1);
  const auto qv = mellin_numeric([&](double t) { return fv_k(sym, 2, t).value.real(); }, s1,
                                 {2.0, -INFINITY});
  CHECK(std::abs(qv.value - v1.value) < 1e-10);

  for (auto x : {Component::E, Component::V, Component::C}) {
    CHECK(fourier_coefficient(sym, 3, x, 0).value.real() ==
          Approx(x == Component::V ? fv_k_star(sym, 3, -1.0).value.real()
                                   : fe_k_star(sym, 3, -1.0).real()).epsilon(1e-14));
    for (int m = 1; m <= 5; ++m) {
      const auto plus = fourier_coefficient(sym, 3, x, m).value;
      const auto minus = fourier_coefficient(sym, 3, x, -m).value;
      CHECK(std::abs(plus - std::conj(minus)) <= 1e-14 * std::abs(plus) + 1e-300);
      CHECK(std::abs(plus) <= std::abs(fourier_coefficient(sym, 3, x, 0).value));
    }
  }
  CHECK_THROWS_AS(fourier_coefficient(skew, 2, Component::E, 1), Error);
}

TEST_CASE("fc coefficients") {
  CHECK(fc_k_star(skew, 3, 4) == fe_k_star(skew, 3, -1.0));
  CHECK(fc_k_star(sym, 3, 0) == fe_k_star(sym, 3, -1.0));
  const cd c1 = fourier_coefficient(sym, 2, Component::E, 1).value;
  const cd expect = c1 * cd(1.0, 2 * std::numbers::pi / std::numbers::ln2);
  CHECK(std::abs(fc_k_star(sym, 2, 1) - expect) < 1e-15 * std::abs(expect));
  // -s f_E^*(s) is the transform of (k - l) f_E(l)
  const auto q = mellin_numeric([&](double t) { return fc_k(skew, 3, t); }, cd(-1.0, 2.0),
                                {3.0, -INFINITY});
  CHECK(std::abs(q.value - fc_k_star_at(skew, 3, cd(-1.0, 2.0))) < 1e-9);
}

TEST_CASE("psi evaluation") {
  const auto aper = fourier_series(skew, 2, Component::E);
  CHECK(aper.period == 0.0);
  for (double t : {0.0, 1.0, 17.3}) CHECK(psi_eval(aper, t) == fe_k_star(skew, 2, -1.0).real());

  const auto s = fourier_series(sym, 2, Component::E, 8);
  const auto s16 = fourier_series(sym, 2, Component::E, 16);
  for (double t = 0; t < 3; t += 0.1) {
    CHECK(std::abs(psi_eval(s, t + s.period) - psi_eval(s, t)) < 1e-12);
    CHECK(std::abs(psi_eval(s16, t) - psi_eval(s, t)) <= s.truncation_residue + 1e-15);
    CHECK(std::abs(psi_eval(s, t) - 0.25) < 1e-5);
    // imaginary residue of the symmetric sum
    cd z = 0.0;
    for (int m = -8; m <= 8; ++m) {
      const double w = 2 * std::numbers::pi * m * t / s.period;
      z += s.coefficient(m) * cd(std::cos(w), std::sin(w));
    }
    CHECK(std::abs(z.imag()) < 1e-12);
  }
}

TEST_CASE("sigma constants") {
  for (const auto& d : {sym, skew, tern}) {
    for (std::size_t k = 2; k <= 5; ++k) {
      const auto ta = toll_asymptotics_phi_k(d, k);
      const auto sc = sigma_constants(d, ta);
      const double fv = fv_k_star(d, k, -1.0).value.real();
      CHECK(sc.sigma2_hat == Approx(fv / entropy(d)).epsilon(1e-14));
      CHECK(sc.sigma2 <= sc.sigma2_hat);
      CHECK(sc.sigma2 > 0.0);
    }
  }
  const auto leaf = sigma_constants(sym, toll_asymptotics_leaf(sym));
  CHECK(leaf.sigma2_hat == 1.0);
  CHECK(leaf.sigma2 == 0.0);

  const auto ta = toll_asymptotics_phi_k(sym, 2);
  for (double t = 0; t < 2; t += 0.2) {
    const auto st = sigma_constants(sym, ta, t);
    CHECK(std::abs(st.sigma2 - sigma_constants(sym, ta).sigma2) < 1e-4);
    CHECK(std::abs(sigma_constants(sym, ta, t + std::numbers::ln2).sigma2 - st.sigma2) < 1e-12);
  }
}

TEST_CASE("trie and patricia moments") {
  const auto l = link_trie_patricia(10.0, 3.0, 2, sym);
  CHECK(l.mean == Approx(20.0).epsilon(1e-15));
  CHECK(l.variance == Approx(2.0 * 10.0 + 4.0 * 3.0).epsilon(1e-15));
  const auto id = link_trie_patricia(10.0, 3.0, 60, sym);
  CHECK(id.mean == Approx(10.0).epsilon(1e-15));
  CHECK(id.variance == Approx(3.0).epsilon(1e-15));
}

TEST_CASE("fringe limits") {
  CHECK(fringe_limit(sym, 2) == Approx(1 / (8 * std::numbers::ln2)).epsilon(1e-14));
  CHECK(fringe_limit(sym, 2) == Approx(0.1803369).epsilon(1e-7));
  CHECK(fringe_limit(sym, 3) == Approx(0.0901685).epsilon(1e-6));
  for (std::size_t k = 2; k < 10; ++k) {
    const double kk = double(k);
    CHECK(fringe_limit(skew, k) ==
          Approx((1 - rho(skew, kk)) / (2 * entropy(skew) * kk * (kk - 1))).epsilon(1e-14));
  }
  const double J = coentropy(tern), H = entropy(tern);
  CHECK(fringe_limit(tern, 2) == Approx((2.0 / 3) / ((J + H) * 2)).epsilon(1e-14));
  CHECK(fringe_mean_limit(sym, 2) == Approx(0.360674).epsilon(1e-6));
}

TEST_CASE("coentropy partial sums") {
  for (const auto& d : {sym, skew, tern}) {
    const double J = coentropy(d);
    double prev = 0.0;
    for (std::size_t K : {2u, 10u, 100u, 1000u, 10000u}) {
      const double s = coentropy_partial_sum(d, K);
      CHECK(s > prev);
      CHECK(s < J);
      // the omitted terms are at most sum_{k>K} 1/(k(k-1)) = 1/K
      CHECK(J - s <= 1.0 / K + 1e-14);
      CHECK(J - s >= (1 - rho(d, K + 1.0)) / K - 1e-14);
      prev = s;
    }
  }
}

TEST_CASE("shape limits") {
  const auto two = enumerate_patricia_shapes(2, 2)[0];
  CHECK(shape_limit(sym, two) == Approx(fringe_mean_limit(sym, 2)).epsilon(1e-15));
  for (const auto& s : enumerate_patricia_shapes(3, 2)) {
    CHECK(shape_limit(sym, s) == Approx(fringe_mean_limit(sym, 3) / 2).epsilon(1e-14));
  }
  CHECK_THROWS_AS(shape_limit(sym, Tree::from_shape_string("(0:(0:*,1:*))", 2)), Error);
}
