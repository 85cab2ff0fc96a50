#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <json.hpp>
#include <optional>
#include <ostream>

#include "ptrie/asymptotics.hpp"
#include "ptrie/error.hpp"
#include "ptrie/functionals.hpp"
#include "ptrie/quadrature.hpp"
#include "ptrie/random.hpp"
#include "ptrie/shapes.hpp"
#include "ptrie/simulation.hpp"
#include "ptrie/source.hpp"
#include "ptrie/tree.hpp"

namespace ptrie::cli {
namespace {

using json = nlohmann::ordered_json;

// Output numbers carry 15 significant digits so that reruns compare
// byte-for-byte even across tiny libm differences in the last bits.
double round15(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return std::strtod(buf, nullptr);
}

json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round15(x);
}

std::string csv_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::size_t default_threads() {
  if (const char* env = std::getenv("PTRIE_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return 0;
}

struct Common {
  std::string format = "json";
  bool timestamp = false;
  std::size_t threads = default_threads();
};

void add_format(CLI::App* sub, Common& c, std::vector<std::string> allowed) {
  sub->add_option("--format", c.format, "Output format")
      ->capture_default_str()
      ->check(CLI::IsMember(std::move(allowed)));
}

void add_envelope_flags(CLI::App* sub, Common& c) {
  sub->add_flag("--timestamp", c.timestamp, "Add a UTC timestamp to the JSON envelope");
}

void add_threads(CLI::App* sub, Common& c) {
  sub->add_option("--threads", c.threads,
                  "Worker threads, 0 for all cores (default: $PTRIE_THREADS or 0)");
}

void emit(std::ostream& out, const Common& c, const std::string& command, json config,
          json results) {
  json env;
  env["tool"] = "ptrie";
  env["version"] = tool_version;
  env["command"] = command;
  if (c.timestamp) env["timestamp"] = utc_timestamp();
  env["config"] = std::move(config);
  env["results"] = std::move(results);
  out << env.dump(2) << '\n';
}

json moments_json(const Moments& m) {
  return {{"mean", num(m.mean)},         {"var", num(m.variance)},
          {"se_mean", num(m.se_mean)},   {"se_var", num(m.se_variance)},
          {"skew", num(m.skewness)},     {"exkurt", num(m.excess_kurtosis)}};
}

void csv_moments_row(std::ostream& out, const std::string& name, const Moments& m) {
  out << name << ',' << csv_num(m.mean) << ',' << csv_num(m.variance) << ','
      << csv_num(m.se_mean) << ',' << csv_num(m.se_variance) << ',' << csv_num(m.skewness) << ','
      << csv_num(m.excess_kurtosis) << '\n';
}

// --- constants -------------------------------------------------------------

struct ConstantsArgs {
  std::string source;
  std::vector<std::size_t> ks{2};
  int fourier = default_fourier_terms;
  double tol = default_series_tol;
};

int cmd_constants(const ConstantsArgs& a, const Common& c, std::ostream& out) {
  const auto d = SourceDistribution::parse(a.source);
  if (a.fourier < 0) throw Error(ErrorKind::invalid_argument, "--fourier must be >= 0");
  if (!(a.tol > 0.0)) throw Error(ErrorKind::invalid_argument, "--tol must be positive");
  const double H = entropy(d);
  const double J = coentropy(d);
  const double dp = periodicity(d);

  json per_k = json::array();
  for (std::size_t k : a.ks) {
    const auto fe = fe_k_star(d, k, -1.0).real();
    const auto fv = fv_k_star(d, k, -1.0, a.tol);
    const auto fc = fc_k_star(d, k, 0).real();
    const auto ta = toll_asymptotics_phi_k(d, k, a.fourier, a.tol);
    const auto sig = sigma_constants(d, ta);
    json e;
    e["k"] = k;
    e["rho_k"] = num(rho(d, static_cast<double>(k)));
    e["fe_star"] = num(fe);
    e["fv_star"] = num(fv.value.real());
    e["fv_error_bound"] = num(fv.error_bound);
    e["fc_star"] = num(fc);
    e["sigma2"] = num(sig.sigma2);
    e["sigma2_hat"] = num(sig.sigma2_hat);
    e["fringe_limit"] = num(fringe_limit(d, k));
    e["fringe_mean_limit"] = num(fringe_mean_limit(d, k));
    json fourier = json::array();
    if (dp > 0.0) {
      for (int m = -a.fourier; m <= a.fourier; ++m) {
        const auto cm = ta.psi_e.coefficient(m);
        fourier.push_back({{"m", m}, {"re", num(cm.real())}, {"im", num(cm.imag())}});
      }
    }
    e["fourier"] = std::move(fourier);
    e["fourier_truncation_residue"] = num(ta.psi_e.truncation_residue);
    per_k.push_back(std::move(e));
  }

  if (c.format == "csv") {
    out << "k,rho_k,fe_star,fv_star,fc_star,sigma2,sigma2_hat,fringe_limit\n";
    for (const auto& e : per_k) {
      out << e["k"].get<std::size_t>();
      for (const char* key : {"rho_k", "fe_star", "fv_star", "fc_star", "sigma2", "sigma2_hat",
                              "fringe_limit"}) {
        out << ',' << (e[key].is_null() ? std::string("nan") : csv_num(e[key].get<double>()));
      }
      out << '\n';
    }
    return exit_ok;
  }
  json config = {{"source", d.to_string()}, {"k", a.ks}, {"fourier", a.fourier}, {"tol", a.tol}};
  json results = {{"H", num(H)}, {"J", num(J)}, {"d_p", num(dp)}, {"constants", per_k}};
  emit(out, c, "constants", std::move(config), std::move(results));
  return exit_ok;
}

// --- simulate / fringe-dist --------------------------------------------------

struct SimulateArgs {
  std::string source;
  std::optional<std::size_t> n;
  std::optional<double> lambda;
  std::size_t replicates = 100;
  std::uint64_t seed = 1;
  std::string functional = "k=2";
  bool paired_trie = false;
  std::size_t max_depth = default_max_depth;
  std::size_t histogram_max = default_histogram_max;
};

SimulationConfig make_config(const SimulateArgs& a, const Common& c) {
  SimulationConfig cfg;
  cfg.source = SourceDistribution::parse(a.source);
  if (a.n.has_value() == a.lambda.has_value()) {
    throw Error(ErrorKind::invalid_argument, "give exactly one of --n and --lambda");
  }
  cfg.mode = a.n ? SizeMode::fixed : SizeMode::poisson;
  cfg.size = a.n ? static_cast<double>(*a.n) : *a.lambda;
  cfg.replicates = a.replicates;
  cfg.seed = a.seed;
  cfg.max_depth = a.max_depth;
  cfg.paired_trie = a.paired_trie;
  cfg.threads = c.threads;
  cfg.histogram_max = a.histogram_max;
  return cfg;
}

json size_config(const SimulateArgs& a) {
  json j;
  if (a.n) j["n"] = *a.n;
  if (a.lambda) j["lambda"] = *a.lambda;
  return j;
}

int cmd_simulate(const SimulateArgs& a, const Common& c, std::ostream& out) {
  SimulationConfig cfg = make_config(a, c);
  cfg.functionals = parse_toll_list(a.functional, cfg.source.alphabet_size());
  const auto s = run(cfg);

  if (c.format == "csv") {
    out << "name,mean,var,se_mean,se_var,skew,exkurt\n";
    for (const auto& f : s.functionals) csv_moments_row(out, f.name, f.patricia);
    for (const auto& f : s.functionals) {
      if (f.trie) csv_moments_row(out, "trie:" + f.name, *f.trie);
      if (f.trie_pullback) csv_moments_row(out, "trie:~" + f.name, *f.trie_pullback);
    }
    return exit_ok;
  }
  json funcs = json::array();
  for (const auto& f : s.functionals) {
    json e = {{"name", f.name}};
    e.update(moments_json(f.patricia));
    if (f.trie) e["trie"] = moments_json(*f.trie);
    if (f.trie_pullback) e["trie_pullback"] = moments_json(*f.trie_pullback);
    funcs.push_back(std::move(e));
  }
  json ks = json::array(), counts = json::array();
  for (std::size_t k = 1; k < s.histogram.size(); ++k) {
    ks.push_back(k);
    counts.push_back(num(s.histogram[k]));
  }
  json results = {
      {"replicates", s.replicates},
      {"seed", s.seed},
      {"mode", s.mode == SizeMode::fixed ? "fixed" : "poisson"},
      {"functionals", std::move(funcs)},
      {"key_count", moments_json(s.key_count)},
      {"node_count", moments_json(s.node_count)},
      {"histogram", {{"k", std::move(ks)}, {"mean_count", std::move(counts)},
                     {"overflow", num(s.histogram_overflow)}}},
  };
  json config = {{"source", cfg.source.to_string()}};
  config.update(size_config(a));
  config.update(json{{"replicates", a.replicates},
                     {"seed", a.seed},
                     {"functional", a.functional},
                     {"paired_trie", a.paired_trie},
                     {"max_depth", a.max_depth},
                     {"histogram_max", a.histogram_max}});
  emit(out, c, "simulate", std::move(config), std::move(results));
  return exit_ok;
}

int cmd_fringe(const SimulateArgs& a, const Common& c, std::ostream& out) {
  const SimulationConfig cfg = make_config(a, c);
  const auto fd = fringe_distribution(cfg);
  if (c.format == "csv") {
    out << "k,mass,se,limit\n";
    for (const auto& m : fd.masses) {
      out << m.k << ',' << csv_num(m.mass) << ',' << csv_num(m.se) << ','
          << (m.k >= 2 ? csv_num(fringe_limit(cfg.source, m.k)) : std::string("")) << '\n';
    }
    return exit_ok;
  }
  json ks = json::array(), mass = json::array(), se = json::array(), lim = json::array();
  for (const auto& m : fd.masses) {
    ks.push_back(m.k);
    mass.push_back(num(m.mass));
    se.push_back(num(m.se));
    lim.push_back(m.k >= 2 ? num(fringe_limit(cfg.source, m.k)) : json(nullptr));
  }
  json results = {{"k", std::move(ks)},
                  {"mass", std::move(mass)},
                  {"se", std::move(se)},
                  {"limit", std::move(lim)},
                  {"overflow", {{"mass", num(fd.overflow.mass)}, {"se", num(fd.overflow.se)}}},
                  {"max_partition_error", num(fd.max_partition_error)}};
  json config = {{"source", cfg.source.to_string()}};
  config.update(size_config(a));
  config.update(json{{"replicates", a.replicates},
                     {"seed", a.seed},
                     {"kmax", a.histogram_max},
                     {"max_depth", a.max_depth}});
  emit(out, c, "fringe-dist", std::move(config), std::move(results));
  return exit_ok;
}

// --- indnum ------------------------------------------------------------------

int cmd_indnum(std::size_t N, const Common& c, std::ostream& out) {
  if (N < 2) throw Error(ErrorKind::invalid_argument, "--N must be at least 2");
  const auto alphas = indnum_alphas(N);
  const auto b = indnum_mean_bounds(alphas);
  if (c.format == "csv") {
    out << "n,alpha\n";
    for (std::size_t n = 0; n < alphas.size(); ++n) out << n << ',' << csv_num(alphas[n]) << '\n';
    return exit_ok;
  }
  json as = json::array();
  for (double v : alphas) as.push_back(num(v));
  json results = {{"alphas", std::move(as)},
                  {"interval", {num(b.lower), num(b.upper)}},
                  {"width_bound", num(b.width_bound)}};
  emit(out, c, "indnum", {{"N", N}, {"source", "0.5,0.5"}}, std::move(results));
  return exit_ok;
}

// --- enumerate -----------------------------------------------------------------

int cmd_enumerate(std::size_t k, const std::string& source, const Common& c, std::ostream& out) {
  const auto d = SourceDistribution::parse(source);
  const auto shapes = enumerate_patricia_shapes(k, d.alphabet_size());
  if (c.format == "text" || c.format == "csv") {
    const char sep = c.format == "csv" ? ',' : ' ';
    if (c.format == "csv") out << "shape,probability,leaves\n";
    for (const auto& s : shapes) {
      std::string shape = s.shape_string();
      if (c.format == "csv") shape = '"' + shape + '"';
      out << shape << sep << csv_num(shape_probability(s, d)) << sep << s.leaf_count() << '\n';
    }
    return exit_ok;
  }
  json list = json::array();
  for (const auto& s : shapes) {
    list.push_back({{"shape", s.shape_string()},
                    {"probability", num(shape_probability(s, d))},
                    {"leaves", s.leaf_count()}});
  }
  emit(out, c, "enumerate", {{"k", k}, {"source", d.to_string()}},
       {{"count", shapes.size()}, {"shapes", std::move(list)}});
  return exit_ok;
}

// --- oscillate -------------------------------------------------------------------

struct OscillateArgs {
  std::string source;
  std::size_t k = 2;
  double lambda0 = 1000.0;
  std::size_t periods = 3;
  std::size_t per_period = 8;
  double period = 0.0;  // used only for aperiodic sources; 0 means log 2
  std::size_t replicates = 100;
  std::uint64_t seed = 1;
  int fourier = default_fourier_terms;
};

int cmd_oscillate(const OscillateArgs& a, const Common& c, std::ostream& out) {
  SimulationConfig cfg;
  cfg.source = SourceDistribution::parse(a.source);
  cfg.replicates = a.replicates;
  cfg.seed = a.seed;
  cfg.threads = c.threads;
  cfg.functionals = {phi_k(a.k)};
  const double dp = periodicity(cfg.source);
  const double period = dp > 0.0 ? dp : (a.period > 0.0 ? a.period : std::log(2.0));
  const auto ta = toll_asymptotics_phi_k(cfg.source, a.k, a.fourier);
  const auto grid = geometric_grid(a.lambda0, period, a.periods, a.per_period);
  const auto pts = oscillation_scan(cfg, grid, ta);
  const auto trend = analyze_oscillation(pts, a.per_period);

  if (c.format == "csv") {
    out << "lambda,log_lambda,ratio,se,overlay\n";
    for (const auto& p : pts) {
      out << csv_num(p.lambda) << ',' << csv_num(p.log_lambda) << ',' << csv_num(p.ratio) << ','
          << csv_num(p.se) << ',' << csv_num(p.overlay) << '\n';
    }
    return exit_ok;
  }
  json points = json::array();
  for (const auto& p : pts) {
    points.push_back({{"lambda", num(p.lambda)},
                      {"log_lambda", num(p.log_lambda)},
                      {"ratio", num(p.ratio)},
                      {"se", num(p.se)},
                      {"overlay", num(p.overlay)}});
  }
  json results = {{"d_p", num(dp)},
                  {"period", num(period)},
                  {"points", std::move(points)},
                  {"trend",
                   {{"slope", num(trend.fit.slope)},
                    {"se_slope", num(trend.fit.se_slope)},
                    {"intercept", num(trend.fit.intercept)},
                    {"period_lag", trend.period_lag},
                    {"period_autocorrelation", num(trend.period_autocorrelation)}}}};
  json config = {{"source", cfg.source.to_string()}, {"k", a.k},
                 {"lambda0", a.lambda0},             {"periods", a.periods},
                 {"per_period", a.per_period},       {"replicates", a.replicates},
                 {"seed", a.seed},                   {"fourier", a.fourier}};
  emit(out, c, "oscillate", std::move(config), std::move(results));
  return exit_ok;
}

// --- selftest --------------------------------------------------------------------

struct Check {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  double max_error = 0.0;

  void record(bool ok, double error = 0.0) {
    ++cases;
    if (!ok) ++failures;
    if (std::isfinite(error)) max_error = std::max(max_error, error);
  }
};

std::vector<SourceDistribution> test_sources() {
  return {SourceDistribution({0.5, 0.5}), SourceDistribution({0.3, 0.7}),
          SourceDistribution::uniform(3)};
}

Check check_fe_quadrature() {
  Check ch{"fe_star_vs_quadrature"};
  for (const auto& d : test_sources()) {
    for (std::size_t k = 2; k <= 6; ++k) {
      const double exact = fe_k_star(d, k, -1.0).real();
      const auto q = mellin_numeric([&](double t) { return fe_k(d, k, t); }, -1.0,
                                    {static_cast<double>(k), -INFINITY});
      const double rel = std::abs(q.value.real() - exact) / exact;
      ch.record(rel <= 1e-8, rel);
    }
  }
  return ch;
}

Check check_fv_quadrature() {
  Check ch{"fv_star_vs_quadrature"};
  for (const auto& d : test_sources()) {
    for (std::size_t k = 2; k <= 4; ++k) {
      const double exact = fv_k_star(d, k, -1.0).value.real();
      const auto q = mellin_numeric([&](double t) { return fv_k(d, k, t).value.real(); }, -1.0,
                                    {static_cast<double>(k), -INFINITY});
      const double rel = std::abs(q.value.real() - exact) / std::abs(exact);
      ch.record(rel <= 1e-7, rel);
    }
  }
  return ch;
}

Check check_pullback(std::uint64_t seed) {
  Check ch{"pullback_identity"};
  const std::vector<TollFunction> tolls = {phi_k(2), phi_internal(), phi_alpha(), phi_geq(3)};
  std::vector<TollFunction> pulled;
  for (const auto& t : tolls) pulled.push_back(pullback(t));
  std::size_t i = 0;
  for (const auto& d : test_sources()) {
    const CharSampler sampler(d);
    for (int rep = 0; rep < 300; ++rep, ++i) {
      const std::uint64_t s = derive_seed(seed, i);
      const std::size_t n = 1 + mix64(s) % 50;
      StreamKeySet keys(sampler, s, n);
      const Trie t = build_trie(keys);
      const PatriciaTrie p = build_patricia(keys);
      const auto lhs = evaluate_additive(tolls, compress(t));
      const auto rhs = evaluate_additive(pulled, t);
      const auto direct = evaluate_additive(tolls, p);
      ch.record(lhs == rhs && lhs == direct && compress(t) == p);
    }
  }
  return ch;
}

Check check_independence(std::uint64_t seed) {
  Check ch{"independence_vs_brute_force"};
  const CharSampler sampler(SourceDistribution({0.5, 0.5}));
  const TollFunction alpha = phi_alpha();
  for (std::size_t i = 0; i < 300; ++i) {
    const std::uint64_t s = derive_seed(seed ^ 0xA5A5A5A5ULL, i);
    const std::size_t n = 1 + mix64(s) % 10;
    StreamKeySet keys(sampler, s, n);
    const PatriciaTrie p = build_patricia(keys);
    ch.record(static_cast<std::size_t>(evaluate_additive(alpha, p)) == brute_force_independence(p));
  }
  return ch;
}

int cmd_selftest(std::uint64_t seed, const Common& c, std::ostream& out) {
  const std::vector<Check> checks = {check_fe_quadrature(), check_fv_quadrature(),
                                     check_pullback(seed), check_independence(seed)};
  bool passed = true;
  for (const auto& ch : checks) passed = passed && ch.failures == 0;
  if (c.format == "csv") {
    out << "check,cases,failures,max_error\n";
    for (const auto& ch : checks) {
      out << ch.name << ',' << ch.cases << ',' << ch.failures << ',' << csv_num(ch.max_error)
          << '\n';
    }
  } else {
    json list = json::array();
    for (const auto& ch : checks) {
      list.push_back({{"name", ch.name},
                      {"cases", ch.cases},
                      {"failures", ch.failures},
                      {"max_error", num(ch.max_error)},
                      {"passed", ch.failures == 0}});
    }
    emit(out, c, "selftest", {{"seed", seed}}, {{"passed", passed}, {"checks", std::move(list)}});
  }
  return passed ? exit_ok : exit_numeric;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random tries and patricia tries: constants, simulation and checks", "ptrie"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version);

  Common common;

  ConstantsArgs ca;
  auto* constants = app.add_subcommand("constants", "Asymptotic constants of the size-k fringe counts");
  constants->add_option("--source", ca.source, "Probabilities '0.3,0.7' or 'uniform:m'")->required();
  constants->add_option("--k", ca.ks, "Fringe sizes")->delimiter(',')->check(CLI::Range(2, 100000));
  constants->add_option("--fourier", ca.fourier, "Fourier terms M")->capture_default_str();
  constants->add_option("--tol", ca.tol, "String-sum tolerance")->capture_default_str();

  SimulateArgs sa;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo statistics of additive functionals");
  simulate->add_option("--source", sa.source, "Probabilities '0.3,0.7' or 'uniform:m'")->required();
  auto* n_opt = simulate->add_option("--n", sa.n, "Fixed number of keys");
  simulate->add_option("--lambda", sa.lambda, "Poisson mean number of keys")->excludes(n_opt);
  simulate->add_option("--replicates", sa.replicates)->capture_default_str()->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sa.seed)->capture_default_str();
  simulate->add_option("--functional", sa.functional, "e.g. k=2,k=3,internal,alpha,geq=5,leaf")
      ->capture_default_str();
  simulate->add_flag("--paired-trie", sa.paired_trie, "Also build the trie and evaluate each toll and its pullback there");
  simulate->add_option("--max-depth", sa.max_depth)->capture_default_str();
  simulate->add_option("--histogram-max", sa.histogram_max)->capture_default_str();

  SimulateArgs fa;
  fa.histogram_max = 16;
  auto* fringe = app.add_subcommand("fringe-dist", "Empirical fringe-size distribution");
  fringe->add_option("--source", fa.source)->required();
  auto* fn_opt = fringe->add_option("--n", fa.n);
  fringe->add_option("--lambda", fa.lambda)->excludes(fn_opt);
  fringe->add_option("--replicates", fa.replicates)->capture_default_str()->check(CLI::PositiveNumber);
  fringe->add_option("--seed", fa.seed)->capture_default_str();
  fringe->add_option("--kmax", fa.histogram_max)->capture_default_str()->check(CLI::PositiveNumber);
  fringe->add_option("--max-depth", fa.max_depth)->capture_default_str();

  std::size_t indnum_N = 800;
  auto* indnum = app.add_subcommand("indnum", "Independence number recursion and mean bounds");
  indnum->add_option("--N", indnum_N)->capture_default_str();

  std::size_t enum_k = 0;
  std::string enum_source = "0.5,0.5";
  auto* enumerate = app.add_subcommand("enumerate", "All patricia shapes with k leaves");
  enumerate->add_option("--k", enum_k)->required();
  enumerate->add_option("--source", enum_source)->capture_default_str();

  OscillateArgs oa;
  auto* oscillate = app.add_subcommand("oscillate", "Scan E[Phi_k]/lambda over a geometric grid");
  oscillate->add_option("--source", oa.source)->required();
  oscillate->add_option("--k", oa.k)->capture_default_str()->check(CLI::Range(2, 100000));
  oscillate->add_option("--lambda0", oa.lambda0)->capture_default_str()->check(CLI::PositiveNumber);
  oscillate->add_option("--periods", oa.periods)->capture_default_str();
  oscillate->add_option("--per-period", oa.per_period)->capture_default_str()->check(CLI::PositiveNumber);
  oscillate->add_option("--period", oa.period, "Grid period for aperiodic sources (default log 2)");
  oscillate->add_option("--replicates", oa.replicates)->capture_default_str()->check(CLI::Range(2ul, 1ul << 40));
  oscillate->add_option("--seed", oa.seed)->capture_default_str();
  oscillate->add_option("--fourier", oa.fourier)->capture_default_str();

  std::uint64_t self_seed = 1;
  auto* selftest = app.add_subcommand("selftest", "Closed form vs quadrature and identity checks");
  selftest->add_option("--seed", self_seed)->capture_default_str();

  for (auto* sub : {constants, simulate, fringe, indnum, oscillate, selftest}) {
    add_format(sub, common, {"json", "csv"});
    add_envelope_flags(sub, common);
  }
  for (auto* sub : {simulate, fringe, oscillate}) add_threads(sub, common);
  std::string enum_format = "text";
  enumerate->add_option("--format", enum_format)->capture_default_str()->check(
      CLI::IsMember({"text", "json", "csv"}));
  add_envelope_flags(enumerate, common);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*constants) return cmd_constants(ca, common, out);
    if (*simulate) return cmd_simulate(sa, common, out);
    if (*fringe) return cmd_fringe(fa, common, out);
    if (*indnum) return cmd_indnum(indnum_N, common, out);
    if (*enumerate) {
      common.format = enum_format;
      return cmd_enumerate(enum_k, enum_source, common, out);
    }
    if (*oscillate) return cmd_oscillate(oa, common, out);
    if (*selftest) return cmd_selftest(self_seed, common, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::invalid_argument ? exit_usage : exit_numeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_numeric;
  }
  return exit_usage;
}

}  // namespace ptrie::cli
