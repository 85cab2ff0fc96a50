#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ptrie/asymptotics.hpp"
#include "ptrie/functionals.hpp"
#include "ptrie/source.hpp"
#include "ptrie/stats.hpp"
#include "ptrie/tree.hpp"

namespace ptrie {

enum class SizeMode { fixed, poisson };

inline constexpr std::size_t default_histogram_max = 64;

struct SimulationConfig {
  SourceDistribution source = SourceDistribution::uniform(2);
  SizeMode mode = SizeMode::fixed;
  double size = 0.0;  // n in fixed mode, lambda in Poisson mode
  std::size_t replicates = 1;
  std::uint64_t seed = 0;
  std::vector<TollFunction> functionals;
  std::size_t max_depth = default_max_depth;
  // Also build the trie of the same keys and evaluate every toll on it,
  // both as given and pulled back.
  bool paired_trie = false;
  std::size_t threads = 1;   // 0: hardware concurrency
  std::size_t histogram_max = default_histogram_max;
  bool keep_samples = false;
};

struct FunctionalSummary {
  std::string name;
  Moments patricia;
  std::optional<Moments> trie;           // toll on the trie, paired runs only
  std::optional<Moments> trie_pullback;  // pulled-back toll on the trie
};

struct SimulationSummary {
  std::vector<FunctionalSummary> functionals;
  Moments key_count;
  Moments node_count;
  // Mean number of nodes whose fringe tree has k leaves, k = 0..histogram_max
  // (entry 0 unused); the overflow entry collects k > histogram_max.
  std::vector<double> histogram;
  double histogram_overflow = 0.0;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
  SizeMode mode = SizeMode::fixed;
  double size = 0.0;
  // samples[f][r]; present when keep_samples is set (trie ones when paired).
  std::vector<std::vector<double>> samples;
  std::vector<std::vector<double>> trie_samples;
  std::vector<std::vector<double>> trie_pullback_samples;
};

/// One replicate: key count, patricia trie (and trie) from lazy streams,
/// all functionals in one pass per tree.
struct Replicate {
  std::size_t keys = 0;
  std::size_t nodes = 0;
  FunctionalValue patricia;
  FunctionalValue trie;
  FunctionalValue trie_pullback;
  std::vector<std::uint32_t> histogram;  // k = 0..histogram_max+1 (last: overflow)
};

/// Replicate r under the config. Seeds derive from (config.seed, r) only.
Replicate run_replicate(const SimulationConfig& config, std::size_t r);

/// Runs the replicates on config.threads workers. The result is identical
/// for every thread count: replicate results are stored by index and
/// reduced in index order. DepthExceeded is rethrown naming the replicate.
SimulationSummary run(const SimulationConfig& config);

/// Calls fn(r) for r in [0, count) on up to `threads` workers. fn must
/// only write to slots owned by r. The first exception (by index) wins.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& fn);

struct Estimate {
  double value = 0.0;
  double se = 0.0;
};

struct FxEstimate {
  Estimate fe;
  Estimate fv;
  Estimate fc;
};

/// Monte Carlo f_E, f_V, f_C of a toll at lambda, from the root toll and
/// the functional of the pulled-back toll on Poisson(lambda) tries.
FxEstimate estimate_fX(const SourceDistribution& d, const TollFunction& toll, double lambda,
                       std::size_t replicates, std::uint64_t seed, std::size_t threads = 1,
                       std::size_t max_depth = default_max_depth);

struct OscillationPoint {
  double lambda = 0.0;
  double log_lambda = 0.0;
  double ratio = 0.0;  // mean / lambda
  double se = 0.0;
  double overlay = 0.0;  // psi_E(log lambda)/H + chi
};

/// lambda_j = lambda0 * exp(j * period / per_period) for j over `periods`
/// full periods (endpoints included).
std::vector<double> geometric_grid(double lambda0, double period, std::size_t periods,
                                   std::size_t per_period);

/// E[Phi]/lambda across the grid in Poisson mode; config.functionals[0] is
/// scanned and config.size is ignored.
std::vector<OscillationPoint> oscillation_scan(const SimulationConfig& config,
                                               const std::vector<double>& lambdas,
                                               const TollAsymptotics& asymptotics);

struct OscillationTrend {
  LinearFit fit;  // ratio - overlay against log lambda
  double period_autocorrelation = 0.0;
  std::size_t period_lag = 0;
};

OscillationTrend analyze_oscillation(const std::vector<OscillationPoint>& points,
                                     std::size_t per_period);

struct FringeMass {
  std::size_t k = 0;
  double mass = 0.0;
  double se = 0.0;
};

struct FringeDistribution {
  std::vector<FringeMass> masses;  // k = 1..histogram_max
  FringeMass overflow;
  double max_partition_error = 0.0;  // max over replicates of |sum of masses - 1|
};

/// Per replicate the share of nodes whose fringe tree has k leaves,
/// averaged over replicates.
FringeDistribution fringe_distribution(const SimulationConfig& config);

struct SllnPoint {
  std::size_t n = 0;
  double ratio = 0.0;      // Phi(P_n) / n
  double deviation = 0.0;  // ratio - psi_E(log n)/H - chi
};

/// One path of nested key sets: the keys for n are those for the previous
/// grid point plus new ones.
std::vector<SllnPoint> slln_track(const SourceDistribution& d, const TollFunction& toll,
                                  const TollAsymptotics& asymptotics,
                                  const std::vector<std::size_t>& n_grid, std::uint64_t seed,
                                  std::size_t max_depth = default_max_depth);

}  // namespace ptrie
