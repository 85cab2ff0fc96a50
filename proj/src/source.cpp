#include "ptrie/source.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "ptrie/error.hpp"

namespace ptrie {

SourceDistribution::SourceDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.size() < 2) {
    throw Error(ErrorKind::invalid_argument, "source needs at least two characters");
  }
  if (probs_.size() > 256) {
    throw Error(ErrorKind::invalid_argument, "alphabets are limited to 256 characters");
  }
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p > 0.0 && p < 1.0)) {
      throw Error(ErrorKind::invalid_argument, "every probability must lie in (0,1)");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw Error(ErrorKind::invalid_argument, "probabilities must sum to 1");
  }
}

SourceDistribution SourceDistribution::uniform(std::size_t m) {
  if (m < 2) throw Error(ErrorKind::invalid_argument, "source needs at least two characters");
  return SourceDistribution(std::vector<double>(m, 1.0 / static_cast<double>(m)));
}

namespace {

double parse_double(std::string_view s) {
  // std::from_chars for double is available in libstdc++ 11
  double v = 0.0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw Error(ErrorKind::invalid_argument, "cannot parse number '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

SourceDistribution SourceDistribution::parse(std::string_view text) {
  constexpr std::string_view uniform_prefix = "uniform:";
  if (text.starts_with(uniform_prefix)) {
    const auto rest = text.substr(uniform_prefix.size());
    std::size_t m = 0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), m);
    if (ec != std::errc() || ptr != rest.data() + rest.size()) {
      throw Error(ErrorKind::invalid_argument, "bad preset '" + std::string(text) + "'");
    }
    return uniform(m);
  }
  std::vector<double> probs;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string_view::npos ? text.size() : comma;
    probs.push_back(parse_double(text.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return SourceDistribution(std::move(probs));
}

double SourceDistribution::string_prob(std::span<const Char> chars) const {
  double p = 1.0;
  for (Char c : chars) p *= probs_.at(c);
  return p;
}

std::string SourceDistribution::to_string() const {
  std::string out;
  char buf[32];
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", probs_[i]);
    if (i) out += ',';
    out += buf;
  }
  return out;
}

double entropy(const SourceDistribution& d) {
  double h = 0.0;
  for (double p : d.probs()) h -= p * std::log(p);
  return h;
}

double coentropy(const SourceDistribution& d) {
  if (d.alphabet_size() == 2) return entropy(d);
  double j = 0.0;
  for (double p : d.probs()) j -= (1.0 - p) * std::log1p(-p);
  return j;
}

std::complex<double> rho(const SourceDistribution& d, std::complex<double> s) {
  std::complex<double> r = 0.0;
  for (double p : d.probs()) r += std::exp(s * std::log(p));
  return r;
}

double rho(const SourceDistribution& d, double s) {
  double r = 0.0;
  for (double p : d.probs()) r += std::pow(p, s);
  return r;
}

namespace {

struct Fraction {
  long num = 0;
  long den = 1;
};

// Best rational approximation of x > 0 by continued-fraction convergents.
// Fails when no convergent within the depth and denominator limits comes
// within the tolerance.
bool rational_approx(double x, const PeriodicityOptions& opts, Fraction& out) {
  long h1 = 1, h2 = 0;
  long k1 = 0, k2 = 1;
  double rem = x;
  const double tol = opts.tolerance * std::max(1.0, std::abs(x));
  for (int i = 0; i < opts.depth; ++i) {
    const double a = std::floor(rem);
    if (a > 1e12) return false;
    const long ai = static_cast<long>(a);
    const long h = ai * h1 + h2;
    const long k = ai * k1 + k2;
    if (k > opts.max_denominator) return false;
    if (std::abs(x - static_cast<double>(h) / static_cast<double>(k)) <= tol) {
      out = {h, k};
      return true;
    }
    const double frac = rem - a;
    if (frac <= 0.0) return false;
    rem = 1.0 / frac;
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
  }
  return false;
}

}  // namespace

double periodicity(const SourceDistribution& d, const PeriodicityOptions& opts) {
  if (!(opts.tolerance > 0.0)) {
    throw Error(ErrorKind::invalid_argument, "periodicity tolerance must be positive");
  }
  // Sorted magnitudes make the result independent of the character order.
  std::vector<double> logs;
  for (double p : d.probs()) logs.push_back(-std::log(p));
  std::sort(logs.begin(), logs.end());
  const double base = logs.front();

  std::vector<Fraction> ratios;
  long lcm_den = 1;
  for (double l : logs) {
    Fraction f;
    if (!rational_approx(l / base, opts, f)) return 0.0;
    ratios.push_back(f);
    lcm_den = std::lcm(lcm_den, f.den);
    if (lcm_den > opts.max_denominator) return 0.0;
  }
  long g = 0;
  for (const Fraction& f : ratios) g = std::gcd(g, f.num * (lcm_den / f.den));
  return base * static_cast<double>(g) / static_cast<double>(lcm_den);
}

}  // namespace ptrie
