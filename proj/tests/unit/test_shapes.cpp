#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "ptrie/error.hpp"
#include "ptrie/random.hpp"
#include "ptrie/shapes.hpp"

using namespace ptrie;
using doctest::Approx;

TEST_CASE("shape counts") {
  CHECK(enumerate_patricia_shapes(1, 2).size() == 1);
  CHECK(enumerate_patricia_shapes(2, 2).size() == 1);
  CHECK(enumerate_patricia_shapes(2, 2)[0].shape_string() == "(0:*,1:*)");
  CHECK(enumerate_patricia_shapes(4, 2).size() == 5);
  // Full binary trees with k leaves: Catalan(k-1).
  const std::size_t catalan[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862};
  for (std::size_t k = 1; k <= 10; ++k) {
    CHECK(enumerate_patricia_shapes(k, 2).size() == catalan[k - 1]);
    CHECK(count_patricia_shapes(k, 2) == double(catalan[k - 1]));
  }
  // Ternary, k = 2: a cherry on any of 3 character pairs.
  CHECK(enumerate_patricia_shapes(2, 3).size() == 3);
  // k = 3: all three characters used once, or 3 character pairs x 2 cherry
  // positions x 3 cherry pairs.
  CHECK(enumerate_patricia_shapes(3, 3).size() == 19);
  for (std::size_t k = 1; k <= 6; ++k) {
    CHECK(enumerate_patricia_shapes(k, 3).size() == std::size_t(count_patricia_shapes(k, 3)));
  }
}

TEST_CASE("enumeration is duplicate-free and has no unary nodes") {
  const auto shapes = enumerate_patricia_shapes(6, 3);
  std::set<std::string> seen;
  for (const auto& s : shapes) {
    CHECK(s.unary_count() == 0);
    CHECK(s.leaf_count() == 6);
    seen.insert(s.shape_string());
  }
  CHECK(seen.size() == shapes.size());
}

TEST_CASE("enumeration limits") {
  CHECK_THROWS_AS(enumerate_patricia_shapes(0, 2), Error);
  CHECK_THROWS_AS(enumerate_patricia_shapes(11, 2), Error);
}

TEST_CASE("shape probabilities") {
  const SourceDistribution sym({0.5, 0.5});
  CHECK(shape_probability(enumerate_patricia_shapes(2, 2)[0], sym) == Approx(1.0).epsilon(1e-15));
  const Tree t3 = Tree::from_shape_string("(0:*,1:(0:*,1:*))", 2);
  CHECK(shape_probability(t3, sym) == Approx(0.5).epsilon(1e-15));
  CHECK(shape_probability(Tree::from_shape_string("*", 2), sym) == 1.0);
  CHECK_THROWS_AS(shape_probability(Tree::from_shape_string("(0:(0:*,1:*))", 2), sym), Error);
}

TEST_CASE("shape probabilities sum to one") {
  for (const auto& d : {SourceDistribution({0.5, 0.5}), SourceDistribution({0.3, 0.7}),
                        SourceDistribution::uniform(3), SourceDistribution({0.2, 0.3, 0.5})}) {
    for (std::size_t k = 1; k <= 6; ++k) {
      double sum = 0.0;
      for (const auto& s : enumerate_patricia_shapes(k, d.alphabet_size())) {
        sum += shape_probability(s, d);
      }
      CHECK(sum == Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("shape frequencies of random patricia tries") {
  const SourceDistribution d({0.3, 0.7});
  const CharSampler sampler(d);
  const std::size_t k = 4, R = 20000;
  std::map<std::string, double> freq;
  for (std::size_t r = 0; r < R; ++r) {
    StreamKeySet keys(sampler, derive_seed(3, r), k);
    freq[build_patricia(keys).shape_string()] += 1;
  }
  for (const auto& s : enumerate_patricia_shapes(k, 2)) {
    const double p = shape_probability(s, d);
    const double se = std::sqrt(p * (1 - p) / R);
    CHECK(std::abs(freq[s.shape_string()] / R - p) < 4 * se);
  }
}

TEST_CASE("prefix law") {
  const SourceDistribution sym({0.5, 0.5});
  const PrefixLaw q2(2, sym);
  const std::vector<Char> zero{0};
  CHECK(q2.mass(zero) == Approx(0.125).epsilon(1e-15));
  CHECK(q2.mass({}) == Approx(1 - rho(sym, 2.0)).epsilon(1e-15));
  CHECK(q2.length_pmf(0) == Approx(0.5).epsilon(1e-15));
  for (const auto& d : {sym, SourceDistribution({0.3, 0.7}), SourceDistribution::uniform(3)}) {
    for (std::size_t i = 2; i <= 5; ++i) {
      const PrefixLaw q(i, d);
      const double r = rho(d, double(i));
      for (std::size_t n = 0; n <= 6; ++n) {
        CHECK(q.total_mass_of_length(n) == Approx((1 - r) * std::pow(r, double(n))).epsilon(1e-12));
        CHECK(q.length_pmf(n) == Approx((1 - r) * std::pow(r, double(n))).epsilon(1e-12));
      }
    }
  }
  CHECK_THROWS_AS(PrefixLaw(1, sym), Error);
}

TEST_CASE("prefix law sampler matches point masses") {
  const SourceDistribution d({0.3, 0.7});
  const PrefixLaw q(2, d);
  SplitMix64 gen(8);
  const std::size_t R = 200000;
  std::map<std::vector<Char>, double> freq;
  for (std::size_t r = 0; r < R; ++r) freq[q.sample(gen)] += 1;
  for (const auto& alpha : std::vector<std::vector<Char>>{{}, {0}, {1}, {1, 1}, {0, 1}, {1, 0, 1}}) {
    const double p = q.mass(alpha);
    const double se = std::sqrt(p * (1 - p) / R);
    CHECK(std::abs(freq[alpha] / R - p) < 4 * se);
  }
}

TEST_CASE("root prefix of random patricia tries follows the prefix law") {
  const SourceDistribution d({0.3, 0.7});
  const CharSampler sampler(d);
  const PrefixLaw q(3, d);
  const std::size_t R = 20000;
  std::map<std::vector<Char>, double> freq;
  for (std::size_t r = 0; r < R; ++r) {
    StreamKeySet keys(sampler, derive_seed(4, r), 3);
    const auto p = build_patricia(keys);
    freq[std::vector<Char>(p.prefix(0).begin(), p.prefix(0).end())] += 1;
  }
  for (const auto& alpha : std::vector<std::vector<Char>>{{}, {0}, {1}, {1, 1}, {1, 0}}) {
    const double p = q.mass(alpha);
    const double se = std::sqrt(p * (1 - p) / R);
    CHECK(std::abs(freq[alpha] / R - p) < 4 * se);
  }
}
