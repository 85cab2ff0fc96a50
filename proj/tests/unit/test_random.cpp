#include <doctest.h>

#include <set>
#include <vector>

#include "ptrie/random.hpp"

using namespace ptrie;

TEST_CASE("SplitMix64 reference outputs") {
  // Published sequence for seed 1234567.
  SplitMix64 g(1234567);
  CHECK(g() == 6457827717110365317ULL);
  CHECK(g() == 3203168211198807973ULL);
  CHECK(g() == 9817491932198370423ULL);
}

TEST_CASE("derive_seed separates indices and masters") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t m = 0; m < 4; ++m) {
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(m, i));
  }
  CHECK(seen.size() == 4000);
  CHECK(derive_seed(5, 17) == derive_seed(5, 17));
}

TEST_CASE("sampler thresholds") {
  const CharSampler s(SourceDistribution({0.5, 0.5}));
  REQUIRE(s.thresholds().size() == 1);
  CHECK(s.thresholds()[0] == (1ULL << 63));
  const CharSampler t(SourceDistribution({0.25, 0.25, 0.5}));
  REQUIRE(t.thresholds().size() == 2);
  CHECK(t.thresholds()[0] == (1ULL << 62));
  CHECK(t.thresholds()[1] == (1ULL << 63));
}

TEST_CASE("block fill and single draws agree") {
  const CharSampler s(SourceDistribution({0.2, 0.3, 0.5}));
  SplitMix64 a(77), b(77);
  std::vector<Char> block(100);
  s.fill(a, block);
  for (Char c : block) CHECK(c == s.draw(b));
}

TEST_CASE("stream prefix does not depend on query order") {
  const CharSampler s(SourceDistribution({0.3, 0.7}));
  CharStream forward(s, 5), backward(s, 5);
  for (std::size_t i = 0; i < 100; ++i) forward.at(i);
  for (std::size_t i = 100; i-- > 0;) backward.at(i);
  for (std::size_t i = 0; i < 100; ++i) CHECK(forward.at(i) == backward.at(i));
  CHECK(forward.materialized().size() % CharStream::block == 0);
}
