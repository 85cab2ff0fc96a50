#include "ptrie/random.hpp"

#include <algorithm>
#include <cmath>

#include "ptrie/kernels.hpp"

namespace ptrie {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return mix64(mix64(master ^ 0x6A09E667F3BCC909ULL) + 0x9E3779B97F4A7C15ULL * (index + 1));
}

CharSampler::CharSampler(const SourceDistribution& d) : source_(d) {
  const auto p = d.probs();
  thresholds_.reserve(p.size() - 1);
  long double cum = 0.0L;
  for (std::size_t a = 0; a + 1 < p.size(); ++a) {
    cum += p[a];
    const long double scaled = std::ldexp(cum, 64);
    std::uint64_t t;
    if (scaled >= 18446744073709551615.0L) {
      t = std::numeric_limits<std::uint64_t>::max();
    } else {
      t = static_cast<std::uint64_t>(scaled + 0.5L);
    }
    thresholds_.push_back(t);
  }
}

void CharSampler::fill(SplitMix64& gen, std::span<Char> out) const {
  std::uint64_t words[CharStream::block];
  while (!out.empty()) {
    const std::size_t n = std::min(out.size(), CharStream::block);
    for (std::size_t i = 0; i < n; ++i) words[i] = gen();
    kernels::classify(std::span<const std::uint64_t>(words, n), thresholds_, out.first(n));
    out = out.subspan(n);
  }
}

Char CharSampler::draw(SplitMix64& gen) const {
  const std::uint64_t w = gen();
  unsigned c = 0;
  for (std::uint64_t t : thresholds_) c += w >= t;
  return static_cast<Char>(c);
}

void CharStream::extend(std::size_t length) {
  const std::size_t old = chars_.size();
  const std::size_t target = (length + block - 1) / block * block;
  chars_.resize(target);
  sampler_->fill(gen_, std::span<Char>(chars_).subspan(old));
}

}  // namespace ptrie
