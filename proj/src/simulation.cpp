#include "ptrie/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "ptrie/error.hpp"
#include "ptrie/random.hpp"

namespace ptrie {
namespace {

constexpr std::uint64_t count_stream_salt = 0xD1B54A32D192ED03ULL;

std::size_t draw_key_count(SizeMode mode, double size, std::uint64_t replicate_seed) {
  if (mode == SizeMode::fixed) return static_cast<std::size_t>(size);
  if (size <= 0.0) return 0;
  SplitMix64 gen(mix64(replicate_seed ^ count_stream_salt));
  std::poisson_distribution<std::uint64_t> poisson(size);
  return static_cast<std::size_t>(poisson(gen));
}

void validate(const SimulationConfig& c) {
  if (c.replicates < 1) throw Error(ErrorKind::invalid_argument, "replicates must be >= 1");
  if (!(c.size >= 0.0) || !std::isfinite(c.size)) {
    throw Error(ErrorKind::invalid_argument, "size must be a finite number >= 0");
  }
  if (c.mode == SizeMode::fixed && c.size != std::floor(c.size)) {
    throw Error(ErrorKind::invalid_argument, "fixed-size mode needs an integer n");
  }
  if (c.max_depth < 1) throw Error(ErrorKind::invalid_argument, "max_depth must be >= 1");
}

std::size_t resolve_threads(std::size_t threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  return threads;
}

std::vector<double> column(const std::vector<FunctionalValue>& rows, std::size_t j) {
  std::vector<double> out(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) out[r] = rows[r][j];
  return out;
}

}  // namespace

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& fn) {
  threads = std::min(resolve_threads(threads), std::max<std::size_t>(count, 1));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::size_t error_index = count;
  std::exception_ptr error;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

Replicate run_replicate(const SimulationConfig& config, std::size_t r) {
  const std::uint64_t rs = derive_seed(config.seed, r);
  Replicate rep;
  rep.keys = draw_key_count(config.mode, config.size, rs);
  const CharSampler sampler(config.source);
  StreamKeySet keys(sampler, rs, rep.keys);
  try {
    const PatriciaTrie p = build_patricia(keys, config.max_depth);
    rep.nodes = p.size();
    rep.patricia = evaluate_additive(config.functionals, p);
    rep.histogram.assign(config.histogram_max + 2, 0);
    for (const Node& n : p.nodes()) {
      rep.histogram[std::min<std::size_t>(n.leaves, config.histogram_max + 1)]++;
    }
    if (config.paired_trie) {
      std::vector<TollFunction> pulled;
      pulled.reserve(config.functionals.size());
      for (const auto& t : config.functionals) pulled.push_back(pullback(t));
      const Trie t = build_trie(keys, config.max_depth);
      rep.trie = evaluate_additive(config.functionals, t);
      rep.trie_pullback = evaluate_additive(pulled, t);
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::depth_exceeded) throw;
    throw Error(ErrorKind::depth_exceeded,
                std::string(e.what()) + " (replicate " + std::to_string(r) + ")");
  }
  return rep;
}

SimulationSummary run(const SimulationConfig& config) {
  validate(config);
  std::vector<Replicate> reps(config.replicates);
  parallel_for(config.replicates, config.threads,
               [&](std::size_t r) { reps[r] = run_replicate(config, r); });

  SimulationSummary s;
  s.replicates = config.replicates;
  s.seed = config.seed;
  s.mode = config.mode;
  s.size = config.size;

  std::vector<double> keys(reps.size()), nodes(reps.size());
  std::vector<FunctionalValue> pat(reps.size()), trie(reps.size()), pulled(reps.size());
  s.histogram.assign(config.histogram_max + 1, 0.0);
  for (std::size_t r = 0; r < reps.size(); ++r) {
    keys[r] = static_cast<double>(reps[r].keys);
    nodes[r] = static_cast<double>(reps[r].nodes);
    pat[r] = std::move(reps[r].patricia);
    trie[r] = std::move(reps[r].trie);
    pulled[r] = std::move(reps[r].trie_pullback);
    for (std::size_t k = 1; k <= config.histogram_max; ++k) s.histogram[k] += reps[r].histogram[k];
    s.histogram_overflow += reps[r].histogram[config.histogram_max + 1];
  }
  const double R = static_cast<double>(reps.size());
  for (auto& h : s.histogram) h /= R;
  s.histogram_overflow /= R;
  s.key_count = moments(keys);
  s.node_count = moments(nodes);

  for (std::size_t j = 0; j < config.functionals.size(); ++j) {
    FunctionalSummary f;
    f.name = config.functionals[j].name();
    const auto pcol = column(pat, j);
    f.patricia = moments(pcol);
    if (config.keep_samples) s.samples.push_back(pcol);
    if (config.paired_trie) {
      const auto tcol = column(trie, j);
      const auto ucol = column(pulled, j);
      f.trie = moments(tcol);
      f.trie_pullback = moments(ucol);
      if (config.keep_samples) {
        s.trie_samples.push_back(tcol);
        s.trie_pullback_samples.push_back(ucol);
      }
    }
    s.functionals.push_back(std::move(f));
  }
  return s;
}

FxEstimate estimate_fX(const SourceDistribution& d, const TollFunction& toll, double lambda,
                       std::size_t replicates, std::uint64_t seed, std::size_t threads,
                       std::size_t max_depth) {
  if (!(lambda > 0.0)) throw Error(ErrorKind::invalid_argument, "lambda must be positive");
  if (replicates < 2) throw Error(ErrorKind::invalid_argument, "need at least 2 replicates");
  const TollFunction pulled = pullback(toll);
  const CharSampler sampler(d);
  std::vector<double> root(replicates), total(replicates), count(replicates);
  parallel_for(replicates, threads, [&](std::size_t r) {
    const std::uint64_t rs = derive_seed(seed, r);
    const std::size_t n = draw_key_count(SizeMode::poisson, lambda, rs);
    count[r] = static_cast<double>(n);
    if (n == 0) return;
    StreamKeySet keys(sampler, rs, n);
    const Trie t = build_trie(keys, max_depth);
    root[r] = toll_at(pulled, t, Tree::root());
    total[r] = evaluate_additive(pulled, t);
  });

  const double R = static_cast<double>(replicates);
  const double chi = toll.chi();
  const double le = lambda * std::exp(-lambda);
  const auto ma = moments(root);
  const auto mb = moments(total);
  const auto mn = moments(count);

  // Each estimate is a mean of per-replicate influence terms; its standard
  // error is their standard deviation over sqrt(R).
  std::vector<double> zv(replicates), zc(replicates);
  for (std::size_t r = 0; r < replicates; ++r) {
    const double a = root[r] - ma.mean;
    const double b = total[r] - mb.mean;
    zv[r] = 2.0 * a * b - a * a + 2.0 * chi * le * (total[r] - root[r]);
    zc[r] = a * (count[r] - mn.mean);
  }
  const double bessel = R / (R - 1.0);
  const auto mzv = moments(zv);
  const auto mzc = moments(zc);

  FxEstimate out;
  out.fe = {ma.mean - chi * le, ma.se_mean};
  out.fv = {bessel * (mzv.mean - 2.0 * chi * le * (mb.mean - ma.mean)) +
                2.0 * chi * le * (mb.mean - ma.mean) - chi * chi * le * (1.0 - le),
            mzv.se_mean};
  out.fc = {bessel * mzc.mean + chi * lambda * (lambda - 1.0) * std::exp(-lambda), mzc.se_mean};
  return out;
}

std::vector<double> geometric_grid(double lambda0, double period, std::size_t periods,
                                   std::size_t per_period) {
  if (!(lambda0 > 0.0) || !(period > 0.0) || per_period == 0) {
    throw Error(ErrorKind::invalid_argument, "grid needs lambda0 > 0, period > 0, per_period >= 1");
  }
  std::vector<double> out;
  const std::size_t count = periods * per_period + 1;
  for (std::size_t j = 0; j < count; ++j) {
    out.push_back(lambda0 * std::exp(static_cast<double>(j) * period /
                                     static_cast<double>(per_period)));
  }
  return out;
}

std::vector<OscillationPoint> oscillation_scan(const SimulationConfig& config,
                                               const std::vector<double>& lambdas,
                                               const TollAsymptotics& asymptotics) {
  if (config.functionals.empty()) throw Error(ErrorKind::invalid_argument, "no functional to scan");
  std::vector<OscillationPoint> out;
  for (std::size_t j = 0; j < lambdas.size(); ++j) {
    SimulationConfig c = config;
    c.functionals = {config.functionals.front()};
    c.mode = SizeMode::poisson;
    c.size = lambdas[j];
    c.seed = derive_seed(config.seed, j);
    c.keep_samples = false;
    const auto s = run(c);
    OscillationPoint p;
    p.lambda = lambdas[j];
    p.log_lambda = std::log(lambdas[j]);
    p.ratio = s.functionals[0].patricia.mean / lambdas[j];
    p.se = s.functionals[0].patricia.se_mean / lambdas[j];
    p.overlay = mean_limit(config.source, asymptotics, p.log_lambda);
    out.push_back(p);
  }
  return out;
}

OscillationTrend analyze_oscillation(const std::vector<OscillationPoint>& points,
                                     std::size_t per_period) {
  std::vector<double> x, y, se;
  for (const auto& p : points) {
    x.push_back(p.log_lambda);
    y.push_back(p.ratio - p.overlay);
    se.push_back(p.se);
  }
  OscillationTrend t;
  t.fit = weighted_linear_fit(x, y, se);
  t.period_lag = per_period;
  t.period_autocorrelation = autocorrelation(y, per_period);
  return t;
}

FringeDistribution fringe_distribution(const SimulationConfig& config) {
  validate(config);
  const std::size_t K = config.histogram_max;
  std::vector<std::vector<double>> shares(K + 2, std::vector<double>(config.replicates, 0.0));
  std::vector<double> partition_error(config.replicates, 0.0);
  SimulationConfig c = config;
  c.functionals.clear();
  c.paired_trie = false;
  parallel_for(config.replicates, config.threads, [&](std::size_t r) {
    const Replicate rep = run_replicate(c, r);
    if (rep.nodes == 0) return;
    double sum = 0.0;
    for (std::size_t k = 1; k <= K + 1; ++k) {
      shares[k][r] = static_cast<double>(rep.histogram[k]) / static_cast<double>(rep.nodes);
      sum += shares[k][r];
    }
    partition_error[r] = std::abs(sum - 1.0);
  });
  FringeDistribution out;
  for (std::size_t k = 1; k <= K; ++k) {
    const auto m = moments(shares[k]);
    out.masses.push_back({k, m.mean, m.se_mean});
  }
  const auto mo = moments(shares[K + 1]);
  out.overflow = {K + 1, mo.mean, mo.se_mean};
  out.max_partition_error = *std::max_element(partition_error.begin(), partition_error.end());
  return out;
}

std::vector<SllnPoint> slln_track(const SourceDistribution& d, const TollFunction& toll,
                                  const TollAsymptotics& asymptotics,
                                  const std::vector<std::size_t>& n_grid, std::uint64_t seed,
                                  std::size_t max_depth) {
  if (!std::is_sorted(n_grid.begin(), n_grid.end())) {
    throw Error(ErrorKind::invalid_argument, "n grid must be increasing");
  }
  const CharSampler sampler(d);
  StreamKeySet keys(sampler, seed);
  std::vector<SllnPoint> out;
  for (std::size_t n : n_grid) {
    if (n == 0) throw Error(ErrorKind::invalid_argument, "n grid entries must be positive");
    keys.resize(n);
    const PatriciaTrie p = build_patricia(keys, max_depth);
    SllnPoint pt;
    pt.n = n;
    pt.ratio = evaluate_additive(toll, p) / static_cast<double>(n);
    pt.deviation = pt.ratio - mean_limit(d, asymptotics, std::log(static_cast<double>(n)));
    out.push_back(pt);
  }
  return out;
}

}  // namespace ptrie
