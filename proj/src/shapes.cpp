#include "ptrie/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ptrie/error.hpp"

namespace ptrie {
namespace {

constexpr double max_enumerated_shapes = 2e6;

void check_k(std::size_t k, std::size_t m) {
  if (k < 1 || k > max_enumeration_leaves) {
    throw Error(ErrorKind::limit_exceeded, "shape enumeration supports 1 <= k <= 10");
  }
  if (m < 2 || m > 256) throw Error(ErrorKind::invalid_argument, "alphabet size must be in [2, 256]");
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(r);
}

// Calls f(parts) for every composition of k into j positive parts.
template <class F>
void for_each_composition(std::size_t k, std::size_t j, std::vector<std::size_t>& parts, F&& f) {
  if (j == 1) {
    parts.push_back(k);
    f(parts);
    parts.pop_back();
    return;
  }
  for (std::size_t first = 1; first + (j - 1) <= k; ++first) {
    parts.push_back(first);
    for_each_composition(k - first, j - 1, parts, f);
    parts.pop_back();
  }
}

// Calls f(chars) for every increasing j-subset of {0..m-1}.
template <class F>
void for_each_subset(std::size_t m, std::size_t j, std::vector<std::size_t>& chars, F&& f) {
  if (chars.size() == j) {
    f(chars);
    return;
  }
  const std::size_t from = chars.empty() ? 0 : chars.back() + 1;
  for (std::size_t c = from; c + (j - chars.size()) <= m; ++c) {
    chars.push_back(c);
    for_each_subset(m, j, chars, f);
    chars.pop_back();
  }
}

}  // namespace

double count_patricia_shapes(std::size_t k, std::size_t m) {
  check_k(k, m);
  std::vector<double> count(k + 1, 0.0);
  count[1] = 1.0;
  for (std::size_t n = 2; n <= k; ++n) {
    for (std::size_t j = 2; j <= std::min(m, n); ++j) {
      double g = 0.0;
      std::vector<std::size_t> parts;
      for_each_composition(n, j, parts, [&](const std::vector<std::size_t>& ps) {
        double prod = 1.0;
        for (std::size_t p : ps) prod *= count[p];
        g += prod;
      });
      count[n] += binomial(m, j) * g;
    }
  }
  return count[k];
}

std::vector<PatriciaTrie> enumerate_patricia_shapes(std::size_t k, std::size_t m) {
  check_k(k, m);
  if (count_patricia_shapes(k, m) > max_enumerated_shapes) {
    throw Error(ErrorKind::limit_exceeded, "too many shapes to enumerate");
  }
  std::vector<std::vector<std::string>> shapes(k + 1);
  shapes[1] = {"*"};
  for (std::size_t n = 2; n <= k; ++n) {
    for (std::size_t j = 2; j <= std::min(m, n); ++j) {
      std::vector<std::size_t> chars;
      for_each_subset(m, j, chars, [&](const std::vector<std::size_t>& cs) {
        std::vector<std::size_t> parts;
        for_each_composition(n, j, parts, [&](const std::vector<std::size_t>& ps) {
          // Cartesian product of the child shape lists.
          std::vector<std::size_t> idx(j, 0);
          for (;;) {
            std::string s = "(";
            for (std::size_t c = 0; c < j; ++c) {
              if (c) s += ',';
              s += std::to_string(cs[c]);
              s += ':';
              s += shapes[ps[c]][idx[c]];
            }
            s += ')';
            shapes[n].push_back(std::move(s));
            std::size_t pos = j;
            while (pos-- > 0) {
              if (++idx[pos] < shapes[ps[pos]].size()) break;
              idx[pos] = 0;
            }
            if (pos == static_cast<std::size_t>(-1)) break;
          }
        });
      });
    }
  }
  std::sort(shapes[k].begin(), shapes[k].end());
  std::vector<PatriciaTrie> out;
  out.reserve(shapes[k].size());
  for (const auto& s : shapes[k]) out.emplace_back(Tree::from_shape_string(s, m));
  return out;
}

double shape_probability(const Tree& shape, const SourceDistribution& d) {
  if (shape.empty()) throw Error(ErrorKind::invalid_argument, "empty shape");
  if (shape.alphabet_size() > d.alphabet_size()) {
    throw Error(ErrorKind::invalid_argument, "shape alphabet larger than the source alphabet");
  }
  if (shape.unary_count() != 0) throw Error(ErrorKind::unary_node, "shape has a unary node");
  const auto nodes = shape.nodes();
  std::vector<double> path(nodes.size(), 1.0);
  double prob = 1.0;
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    const Node& n = nodes[v];
    if (n.child_count == 0) {
      prob *= path[v];
      continue;
    }
    prob /= 1.0 - rho(d, static_cast<double>(n.leaves));
    for (std::uint32_t c = 0; c < n.child_count; ++c) {
      const NodeId w = n.first_child + c;
      path[w] = path[v] * d.prob(nodes[w].edge);
    }
  }
  for (std::uint32_t i = 2; i <= nodes[0].leaves; ++i) prob *= static_cast<double>(i);
  return prob;
}

namespace {

SourceDistribution tilt(std::size_t i, const SourceDistribution& d) {
  const double r = rho(d, static_cast<double>(i));
  std::vector<double> q;
  for (double p : d.probs()) q.push_back(std::pow(p, static_cast<double>(i)) / r);
  return SourceDistribution(std::move(q));
}

}  // namespace

PrefixLaw::PrefixLaw(std::size_t i, const SourceDistribution& d)
    : i_(i), source_(d), rho_i_(i >= 2 ? rho(d, static_cast<double>(i)) : 1.0),
      tilted_(i >= 2 ? tilt(i, d) : d) {
  if (i < 2) throw Error(ErrorKind::invalid_argument, "prefix law needs i >= 2");
}

double PrefixLaw::mass(std::span<const Char> alpha) const {
  return std::pow(source_.string_prob(alpha), static_cast<double>(i_)) * (1.0 - rho_i_);
}

double PrefixLaw::length_pmf(std::size_t n) const {
  return (1.0 - rho_i_) * std::pow(rho_i_, static_cast<double>(n));
}

double PrefixLaw::total_mass_of_length(std::size_t n) const {
  const std::size_t m = source_.alphabet_size();
  std::vector<Char> alpha(n, 0);
  double total = 0.0;
  for (;;) {
    total += mass(alpha);
    std::size_t pos = n;
    while (pos-- > 0) {
      if (++alpha[pos] < m) break;
      alpha[pos] = 0;
    }
    if (pos == static_cast<std::size_t>(-1)) break;
  }
  return total;
}

std::vector<Char> PrefixLaw::sample(SplitMix64& gen) const {
  const double u = (static_cast<double>(gen() >> 11) + 1.0) * 0x1.0p-53;
  const auto length = static_cast<std::size_t>(std::floor(std::log(u) / std::log(rho_i_)));
  std::vector<Char> alpha(length);
  tilted_.fill(gen, alpha);
  return alpha;
}

}  // namespace ptrie
