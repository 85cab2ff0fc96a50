#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ptrie/random.hpp"
#include "ptrie/source.hpp"
#include "ptrie/tree.hpp"

namespace ptrie {

inline constexpr std::size_t max_enumeration_leaves = 10;

/// Every m-ary tree with k leaves and no unary node, each exactly once,
/// sorted by shape string. Shapes carry no prefixes or keys.
/// Throws LimitExceeded for k outside [1, 10] or more than 2e6 shapes.
std::vector<PatriciaTrie> enumerate_patricia_shapes(std::size_t k, std::size_t m);

/// Number of such shapes, by dynamic programming.
double count_patricia_shapes(std::size_t k, std::size_t m);

/// Probability that the patricia trie of k i.i.d. keys has this shape:
///   k! * prod_{leaves v} p_v * prod_{internal w} 1 / (1 - rho(|T^w|))
/// where p_v is the probability of the branch characters on the path to v.
/// Throws UnaryNode if the shape has a node with exactly one child.
double shape_probability(const Tree& shape, const SourceDistribution& d);

/// Law of the common prefix stored in an internal node whose fringe tree
/// holds i >= 2 keys: q_i({alpha}) = p_alpha^i (1 - rho(i)). The length is
/// Geom_0(1 - rho(i)) and, given the length, the characters are i.i.d.
/// with masses p_a^i / rho(i).
class PrefixLaw {
public:
  PrefixLaw(std::size_t i, const SourceDistribution& d);

  std::size_t keys() const noexcept { return i_; }
  double rho_i() const noexcept { return rho_i_; }

  double mass(std::span<const Char> alpha) const;
  /// P(|alpha| = n) = (1 - rho(i)) rho(i)^n.
  double length_pmf(std::size_t n) const;
  /// Sum of q_i over all strings of length n, by enumeration (small n).
  double total_mass_of_length(std::size_t n) const;

  std::vector<Char> sample(SplitMix64& gen) const;

private:
  std::size_t i_;
  SourceDistribution source_;
  double rho_i_;
  CharSampler tilted_;
};

}  // namespace ptrie
