#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "ptrie/source.hpp"

namespace ptrie {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed for stream `index` under `master`. Streams derived from distinct
/// indices are independent for all practical purposes, and derivation has
/// no sequential dependence, so replicates can run in any order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// SplitMix64 generator. Satisfies UniformRandomBitGenerator.
class SplitMix64 {
public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  result_type operator()() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

private:
  std::uint64_t state_;
};

/// Maps uniform 64-bit words to characters: character a is drawn when the
/// word falls in [c_{a-1}, c_a) with c_a = 2^64 * (p_0 + ... + p_a).
class CharSampler {
public:
  explicit CharSampler(const SourceDistribution& d);

  const SourceDistribution& source() const noexcept { return source_; }
  std::span<const std::uint64_t> thresholds() const noexcept { return thresholds_; }

  void fill(SplitMix64& gen, std::span<Char> out) const;
  Char draw(SplitMix64& gen) const;

private:
  SourceDistribution source_;
  std::vector<std::uint64_t> thresholds_;
};

/// Lazily materialized infinite i.i.d. character stream. Characters are
/// generated in fixed-size blocks, so the materialized prefix only depends
/// on the seed, never on the order of queries.
class CharStream {
public:
  static constexpr std::size_t block = 16;

  CharStream(const CharSampler& sampler, std::uint64_t seed) : sampler_(&sampler), gen_(seed) {}

  Char at(std::size_t i) {
    if (i >= chars_.size()) extend(i + 1);
    return chars_[i];
  }

  std::span<const Char> materialized() const noexcept { return chars_; }

private:
  void extend(std::size_t length);

  const CharSampler* sampler_;
  SplitMix64 gen_;
  std::vector<Char> chars_;
};

}  // namespace ptrie
