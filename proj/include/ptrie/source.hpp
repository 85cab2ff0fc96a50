#pragma once

#include <complex>
#include <cstdint>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ptrie {

/// Alphabet character; alphabets have at most 256 letters.
using Char = std::uint8_t;

/// Memoryless source over the alphabet {0, ..., m-1}.
///
/// Immutable after construction. Every probability lies strictly inside
/// (0, 1) and the vector sums to one within 1e-12.
class SourceDistribution {
public:
  explicit SourceDistribution(std::vector<double> probs);

  /// Uniform source on `m` characters.
  static SourceDistribution uniform(std::size_t m);

  /// Parses "0.3,0.7" or "uniform:3".
  static SourceDistribution parse(std::string_view text);

  std::size_t alphabet_size() const noexcept { return probs_.size(); }
  std::span<const double> probs() const noexcept { return probs_; }
  double prob(std::size_t a) const { return probs_.at(a); }

  /// Probability of a finite string, the product of its character masses.
  double string_prob(std::span<const Char> chars) const;

  /// Comma-separated probabilities, 17 significant digits.
  std::string to_string() const;

  bool operator==(const SourceDistribution&) const = default;

private:
  std::vector<double> probs_;
};

/// H = sum p_a log(1/p_a), natural log.
double entropy(const SourceDistribution& d);

/// J = sum (1-p_a) log(1/(1-p_a)). Equals H for binary sources.
double coentropy(const SourceDistribution& d);

/// rho(s) = sum p_a^s.
std::complex<double> rho(const SourceDistribution& d, std::complex<double> s);
double rho(const SourceDistribution& d, double s);

struct PeriodicityOptions {
  double tolerance = 1e-10;
  int depth = 40;               // continued-fraction terms
  long max_denominator = 1000;  // larger denominators count as irrational
};

/// Largest d > 0 with every log p_a in d*Z, or 0 when the group generated
/// by the log-probabilities is dense.
double periodicity(const SourceDistribution& d, const PeriodicityOptions& opts = {});

}  // namespace ptrie
