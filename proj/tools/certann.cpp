// certann command-line tool: build / query / bench / validate.
//
// Exit codes: 0 success, 2 bad configuration, 3 bad data, 4 broken internal
// invariant. Verbosity via CERTANN_LOG = quiet | info | debug (default info).

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "certann/analysis.hpp"
#include "certann/dataset_io.hpp"
#include "certann/errors.hpp"
#include "certann/hashing.hpp"
#include "certann/index.hpp"
#include "certann/metric.hpp"
#include "certann/rng.hpp"
#include "certann/validation.hpp"

namespace {

using namespace certann;

enum class LogLevel { quiet = 0, info = 1, debug = 2 };

LogLevel g_log = LogLevel::info;

void init_log_level() {
  const char* env = std::getenv("CERTANN_LOG");
  if (env == nullptr) return;
  const std::string v(env);
  if (v == "quiet") {
    g_log = LogLevel::quiet;
  } else if (v == "info") {
    g_log = LogLevel::info;
  } else if (v == "debug") {
    g_log = LogLevel::debug;
  } else if (!v.empty()) {
    std::cerr << "warning: unknown CERTANN_LOG value '" << v << "', using info\n";
  }
}

bool log_at(LogLevel level) { return static_cast<int>(g_log) >= static_cast<int>(level); }

std::string sig6(double v) {
  std::ostringstream out;
  out << std::setprecision(6) << v;
  return out.str();
}

MetricP parse_p(const std::string& text) {
  if (text == "inf" || text == "infinity") return MetricP::infinity();
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size()) {
    throw config_error("invalid value for --p: '" + text + "'");
  }
  return MetricP(v);
}

Distribution parse_dist(const std::string& text) {
  if (text == "uniform") return Distribution::bounded_uniform;
  if (text == "rademacher") return Distribution::rademacher;
  throw config_error("invalid value for --dist: '" + text + "'");
}

IndexMode parse_mode(const std::string& text) {
  if (text == "full") return IndexMode::full_expansion;
  if (text == "light") return IndexMode::light;
  throw config_error("invalid value for --mode: '" + text + "'");
}

DataFormat resolve_format(const std::string& text, const std::string& path) {
  if (text.empty()) return format_from_extension(path);
  if (text == "csv") return DataFormat::csv;
  if (text == "fvec") return DataFormat::fvec;
  throw config_error("invalid value for --format: '" + text + "'");
}

int resolve_threads(int threads) {
  if (threads < 0) throw config_error("--threads must be >= 0");
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

struct Options {
  std::string p_text = "2";
  double radius = 1.0;
  double c = 0.0;
  bool c_given = false;
  std::string dist_text = "rademacher";
  std::string mode_text = "light";
  int k = 0;  // 0 = automatic
  bool clamp_k = false;
  std::uint64_t seed = 0;
  std::uint64_t cell_budget = kDefaultCellBudget;
  int threads = 0;  // 0 = all cores
  std::string format_text;

  std::string input;
  std::string output;
  std::string index_path;
  std::string vector_text;
  std::string queries_path;
  std::string suite;
  std::string csv_path;
  bool oracle = false;
  std::uint64_t trials = 0;  // 0 = per-suite default
  std::uint64_t pairs = 10;
  std::uint64_t synth_n = 2000;
  std::int64_t synth_d = 16;
  std::uint64_t num_queries = 100;
};

// Shared index-parameter flags; `radius_required` marks commands for which a
// radius has no sensible default.
void add_config_flags(CLI::App* cmd, Options& opts, bool radius_required) {
  cmd->add_option("--p", opts.p_text, "Metric order p in [1, inf], e.g. 1, 1.5, 2, inf")
      ->capture_default_str();
  auto* radius = cmd->add_option("--radius", opts.radius, "Near-neighbor radius r");
  if (radius_required) radius->required();
  cmd->add_option("--c", opts.c, "Approximation factor (must exceed the admissible tau)")
      ->each([&opts](const std::string&) { opts.c_given = true; });
  cmd->add_option("--dist", opts.dist_text, "Projection distribution")
      ->check(CLI::IsMember({"uniform", "rademacher"}))
      ->capture_default_str();
  cmd->add_option("--seed", opts.seed, "RNG seed")->capture_default_str();
  cmd->add_option("--threads", opts.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();
}

void add_build_flags(CLI::App* cmd, Options& opts) {
  cmd->add_option("--mode", opts.mode_text, "Index mode: full (3^k cells per point, 1 probe) or light (1 cell, 3^k probes)")
      ->check(CLI::IsMember({"full", "light"}))
      ->capture_default_str();
  cmd->add_option("--k", opts.k, "Number of hash functions (default: derived from n)");
  cmd->add_flag("--clamp-k", opts.clamp_k, "Fall back to k=1 when automatic selection fails");
  cmd->add_option("--cell-budget", opts.cell_budget, "Cap on 3^k cells per point/query")
      ->capture_default_str();
}

Eigen::VectorXd zero_vector(Eigen::Index d) { return Eigen::VectorXd::Zero(d); }

// Smallest m with P(Poisson(lambda) <= m) >= 0.99: the largest event count
// consistent (at 99%) with a per-trial probability of lambda/trials.
std::uint64_t poisson_quantile_99(double lambda) {
  double term = std::exp(-lambda);
  double cum = term;
  std::uint64_t m = 0;
  while (cum < 0.99 && m < 1000000) {
    ++m;
    term *= lambda / static_cast<double>(m);
    cum += term;
  }
  return m;
}

// ---------------------------------------------------------------- build ----

int cmd_build(const Options& opts) {
  Dataset dataset = read_dataset(opts.input, resolve_format(opts.format_text, opts.input));
  if (!opts.c_given) throw config_error("--c is required for build");
  const MetricP p = parse_p(opts.p_text);
  const Distribution dist = parse_dist(opts.dist_text);
  const IndexMode mode = parse_mode(opts.mode_text);
  const AnalysisParams params(dataset.dim(), p, opts.radius, opts.c, dist);
  const auto& consts = params.constants();

  std::optional<int> k;
  if (opts.k != 0) {
    k = opts.k;
  } else if (opts.clamp_k) {
    try {
      const auto n = static_cast<std::uint64_t>(dataset.size());
      k = mode == IndexMode::full_expansion
              ? choose_k_full(n, params.dim(), consts.a)
              : choose_k_light(n, consts.a, consts.b);
    } catch (const config_error&) {
      k = 1;
      if (log_at(LogLevel::info)) std::cout << "automatic k unavailable; clamped to k=1\n";
    }
  }

  const Index index =
      Index::build(std::move(dataset), params, mode, k, opts.seed, opts.cell_budget);
  index.save(opts.output);

  if (log_at(LogLevel::info)) {
    std::cout << "points: " << index.dataset().size() << "  dim: " << index.dataset().dim()
              << "  p: " << to_string(p) << "  dist: " << to_string(dist)
              << "  mode: " << to_string(index.mode()) << '\n';
    std::cout << "k: " << index.k() << '\n';
    std::cout << "tau: " << sig6(consts.tau) << '\n';
    std::cout << "p_fp: " << sig6(consts.p_fp) << '\n';
    std::cout << "gamma: " << sig6(consts.gamma) << '\n';
    std::cout << "cells: 3^" << index.k() << " = " << cells_for_k(index.k(), opts.cell_budget)
              << '\n';
    std::cout << "buckets: " << index.bucket_count()
              << "  stored references: " << index.stored_references() << '\n';
    std::cout << "build time: " << sig6(index.build_seconds()) << " s\n";
    std::cout << "wrote " << opts.output << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- query ----

void print_result(const QueryResult& result, const std::string& label) {
  if (log_at(LogLevel::info)) {
    std::cout << "# " << label << ": " << result.ids.size() << " results, "
              << result.candidates_scanned << " candidates, " << result.buckets_probed
              << " buckets probed\n";
  }
  // Sorted by distance, ties by id.
  std::vector<std::size_t> order(result.ids.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (result.distances[a] != result.distances[b]) {
      return result.distances[a] < result.distances[b];
    }
    return result.ids[a] < result.ids[b];
  });
  for (const std::size_t i : order) {
    std::cout << result.ids[i] << ' ' << sig6(result.distances[i]) << '\n';
  }
}

int cmd_query(const Options& opts) {
  const Index index = Index::load(opts.index_path);
  if (opts.vector_text.empty() == opts.queries_path.empty()) {
    throw config_error("query needs exactly one of --vector or --queries");
  }
  if (!opts.vector_text.empty()) {
    const Eigen::VectorXd q = parse_vector(opts.vector_text);
    print_result(index.query(q), "query");
  } else {
    const Dataset queries =
        read_dataset(opts.queries_path, resolve_format(opts.format_text, opts.queries_path));
    for (Eigen::Index i = 0; i < queries.size(); ++i) {
      print_result(index.query(queries.point(i)), "query " + std::to_string(i));
    }
  }
  return 0;
}

// ---------------------------------------------------------------- bench ----

int cmd_bench(const Options& opts) {
  const Index index = Index::load(opts.index_path);
  const Dataset queries =
      read_dataset(opts.queries_path, resolve_format(opts.format_text, opts.queries_path));
  if (queries.dim() != index.dataset().dim()) {
    throw data_error("query dimension (" + std::to_string(queries.dim()) +
                     ") does not match index dimension (" + std::to_string(index.dataset().dim()) +
                     ")");
  }
  const auto n = static_cast<std::size_t>(queries.size());
  const int threads = resolve_threads(opts.threads);
  std::vector<QueryResult> results(n);

  const auto start = std::chrono::steady_clock::now();
  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      results[i] = index.query(queries.point(static_cast<Eigen::Index>(i)));
    }
  };
  if (threads <= 1 || n < 2) {
    run_range(0, n);
  } else {
    std::vector<std::thread> pool;
    const std::size_t per = (n + static_cast<std::size_t>(threads) - 1) / threads;
    for (std::size_t begin = 0; begin < n; begin += per) {
      pool.emplace_back(run_range, begin, std::min(n, begin + per));
    }
    for (auto& t : pool) t.join();
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::uint64_t total_candidates = 0;
  std::uint64_t total_results = 0;
  for (const QueryResult& r : results) {
    total_candidates += r.candidates_scanned;
    total_results += r.ids.size();
    if (log_at(LogLevel::debug)) {
      std::cout << "# candidates=" << r.candidates_scanned << " results=" << r.ids.size() << '\n';
    }
  }
  std::cout << "queries: " << n << '\n';
  std::cout << "threads: " << threads << '\n';
  std::cout << "total time: " << sig6(seconds) << " s\n";
  std::cout << "throughput: " << sig6(seconds > 0 ? static_cast<double>(n) / seconds : 0.0)
            << " queries/s\n";
  std::cout << "avg candidates: "
            << sig6(n ? static_cast<double>(total_candidates) / static_cast<double>(n) : 0.0) << '\n';
  std::cout << "avg results: "
            << sig6(n ? static_cast<double>(total_results) / static_cast<double>(n) : 0.0) << '\n';

  if (opts.oracle) {
    const auto& params = index.params();
    const double cr = params.approx_factor() * params.radius();
    std::size_t pass = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto q = queries.point(static_cast<Eigen::Index>(i));
      const auto near = brute_force_query(index.dataset(), q, params.p(), params.radius(), true);
      const auto far = brute_force_query(index.dataset(), q, params.p(), cr, false);
      const auto& got = results[i].ids;
      const bool ok = std::includes(got.begin(), got.end(), near.begin(), near.end()) &&
                      std::includes(far.begin(), far.end(), got.begin(), got.end());
      if (ok) ++pass;
    }
    std::cout << "sandwich: " << pass << "/" << n << " pass\n";
    if (pass != n) {
      throw internal_error("sandwich violated on " + std::to_string(n - pass) + " queries");
    }
  }
  return 0;
}

// ------------------------------------------------------------- validate ----

int run_suite_bounds(const Options& opts) {
  BoundsSweepConfig config;
  config.r = opts.radius;
  config.pairs = opts.pairs;
  config.trials = opts.trials == 0 ? 20000 : opts.trials;
  config.seed = opts.seed;
  config.workers = resolve_threads(opts.threads);
  const std::vector<BoundsCell> cells = run_bounds_sweep(config);
  std::cout << render_bounds_text(cells, config.workers);
  if (!opts.csv_path.empty()) {
    std::ofstream out(opts.csv_path);
    if (!out) throw data_error("cannot write report file: " + opts.csv_path);
    out << render_bounds_csv(cells, config.workers);
  }
  std::size_t failures = 0;
  for (const BoundsCell& cell : cells) {
    if (!cell.pass) ++failures;
  }
  if (failures > 0) {
    throw internal_error("far-pair bound violated in " + std::to_string(failures) + " cells");
  }
  return 0;
}

int run_suite_tightness(const Options& opts) {
  const double r = opts.radius;
  const std::uint64_t trials = opts.trials == 0 ? 100000 : opts.trials;
  const int workers = resolve_threads(opts.threads);
  std::ostringstream csv;
  csv << "# workers=" << workers << '\n';
  csv << "regime,d,p,distribution,epsilon,trials,collisions,bound,pass\n";
  std::cout << "tightness check (trials=" << trials << " per cell, workers=" << workers << ")\n";
  std::cout << std::left << std::setw(8) << "regime" << std::setw(8) << "d" << std::setw(6) << "p"
            << std::setw(12) << "dist" << std::setw(12) << "eps" << std::setw(12) << "miss_rate"
            << std::setw(12) << "bound" << "pass" << '\n';
  std::size_t failures = 0;
  std::uint64_t cell = 0;
  for (const Distribution dist : {Distribution::bounded_uniform, Distribution::rademacher}) {
    // p >= 2: the witness collides with the origin on every draw.
    for (const Eigen::Index d : {Eigen::Index(4), Eigen::Index(64)}) {
      for (const MetricP p : {MetricP(2.0), MetricP(4.0), MetricP::infinity()}) {
        const double eps = 1e-6 * r * scaling_factor(d, p);
        const TightnessWitness w = tightness_witness_pge2(d, p, r, eps);
        const AnalysisParams params(d, p, r, 2.0 * min_approx_factor(dist, d, p), dist);
        const CollisionEstimate est = estimate_collision_probability(
            w.point, zero_vector(d), params, trials, derive_stream(opts.seed, cell++), workers);
        const bool pass = est.collisions == est.trials;
        failures += pass ? 0 : 1;
        const double miss = 1.0 - est.rate;
        std::cout << std::left << std::setw(8) << "p>=2" << std::setw(8) << d << std::setw(6)
                  << to_string(p) << std::setw(12) << to_string(dist) << std::setw(12) << sig6(eps)
                  << std::setw(12) << sig6(miss) << std::setw(12) << "0" << (pass ? "yes" : "NO")
                  << '\n';
        csv << "p_ge_2," << d << ',' << to_string(p) << ',' << to_string(dist) << ','
            << std::setprecision(17) << eps << ',' << trials << ',' << est.collisions << ",0,"
            << (pass ? "true" : "false") << '\n';
      }
    }
    // p < 2: non-collision no more frequent than the Hoeffding bound allows.
    {
      const Eigen::Index d = 4096;
      const MetricP p(1.0);
      const double eps = 0.25;
      const TightnessWitness w = tightness_witness_plt2(d, p, r, eps);
      const AnalysisParams params(d, p, r, 2.0 * min_approx_factor(dist, d, p), dist);
      const CollisionEstimate est = estimate_collision_probability(
          w.point, zero_vector(d), params, trials, derive_stream(opts.seed, cell++), workers);
      const std::uint64_t miss = est.trials - est.collisions;
      const double bound = std::min(1.0, hoeffding_bound(d, eps));  // clamped for display only
      // Pass when the miss count is statistically consistent with the bound;
      // at these parameters that means zero misses.
      const bool pass = miss <= poisson_quantile_99(static_cast<double>(est.trials) * bound);
      failures += pass ? 0 : 1;
      std::cout << std::left << std::setw(8) << "p<2" << std::setw(8) << d << std::setw(6)
                << to_string(p) << std::setw(12) << to_string(dist) << std::setw(12) << sig6(eps)
                << std::setw(12) << sig6(1.0 - est.rate) << std::setw(12) << sig6(bound)
                << (pass ? "yes" : "NO") << '\n';
      csv << "p_lt_2," << d << ',' << to_string(p) << ',' << to_string(dist) << ','
          << std::setprecision(17) << eps << ',' << trials << ',' << est.collisions << ','
          << std::setprecision(17) << bound << ',' << (pass ? "true" : "false") << '\n';
    }
  }
  if (!opts.csv_path.empty()) {
    std::ofstream out(opts.csv_path);
    if (!out) throw data_error("cannot write report file: " + opts.csv_path);
    out << csv.str();
  }
  if (failures > 0) {
    throw internal_error("tightness check failed in " + std::to_string(failures) + " cells");
  }
  return 0;
}

int run_suite_sandwich(const Options& opts) {
  const MetricP p = parse_p(opts.p_text);
  const Distribution dist = parse_dist(opts.dist_text);
  const IndexMode mode = parse_mode(opts.mode_text);
  const double r = opts.radius;

  Dataset dataset = [&] {
    if (!opts.input.empty()) {
      return read_dataset(opts.input, resolve_format(opts.format_text, opts.input));
    }
    RngStream rng(derive_stream(opts.seed, 0x0da7a));
    Eigen::MatrixXd points(opts.synth_d, static_cast<Eigen::Index>(opts.synth_n));
    for (Eigen::Index id = 0; id < points.cols(); ++id) {
      for (Eigen::Index i = 0; i < points.rows(); ++i) points(i, id) = rng.gaussian();
    }
    return Dataset(std::move(points));
  }();
  const Eigen::Index d = dataset.dim();
  const double c = opts.c_given ? opts.c : 3.0 * min_approx_factor(dist, d, p);
  const AnalysisParams params(d, p, r, c, dist);
  const double cr = c * r;

  const std::optional<int> k = opts.k != 0 ? std::optional<int>(opts.k) : std::nullopt;
  const Index index = Index::build(std::move(dataset), params, mode, k, opts.seed, opts.cell_budget);

  // Queries are dataset points plus noise of p-norm up to 2r, redrawn when
  // any point distance sits within 1e-9 (relative) of a threshold.
  RngStream qrng(derive_stream(opts.seed, 0x90e1));
  const auto& data = index.dataset();
  std::size_t pass = 0;
  for (std::uint64_t qi = 0; qi < opts.num_queries; ++qi) {
    Eigen::VectorXd q(d);
    for (int attempt = 0; attempt < 200; ++attempt) {
      const auto anchor = static_cast<Eigen::Index>(qrng.bits() % static_cast<std::uint64_t>(data.size()));
      Eigen::VectorXd noise(d);
      for (Eigen::Index i = 0; i < d; ++i) noise[i] = qrng.gaussian();
      const double norm = lp_norm(noise, p);
      const double target = 2.0 * r * qrng.uniform01();
      q = data.point(anchor) + (norm > 0 ? (noise * (target / norm)).eval() : noise);
      bool clear = true;
      for (Eigen::Index id = 0; id < data.size(); ++id) {
        const double dd = lp_distance(data.point(id), q, p);
        if (std::abs(dd - r) <= 1e-9 * r || std::abs(dd - cr) <= 1e-9 * cr) {
          clear = false;
          break;
        }
      }
      if (clear) break;
    }
    const QueryResult result = index.query(q);
    const auto near = brute_force_query(data, q, p, r, true);
    const auto far = brute_force_query(data, q, p, cr, false);
    const bool ok = std::includes(result.ids.begin(), result.ids.end(), near.begin(), near.end()) &&
                    std::includes(far.begin(), far.end(), result.ids.begin(), result.ids.end());
    if (ok) ++pass;
    if (log_at(LogLevel::debug)) {
      std::cout << "# query " << qi << ": near=" << near.size() << " returned="
                << result.ids.size() << " closed=" << far.size() << (ok ? "" : "  VIOLATION")
                << '\n';
    }
  }
  std::cout << "sandwich: " << pass << "/" << opts.num_queries << " pass\n";
  if (pass != opts.num_queries) {
    throw internal_error("sandwich violated on " + std::to_string(opts.num_queries - pass) +
                         " queries");
  }
  return 0;
}

int cmd_validate(const Options& opts) {
  if (opts.suite == "bounds") return run_suite_bounds(opts);
  if (opts.suite == "tightness") return run_suite_tightness(opts);
  if (opts.suite == "sandwich") return run_suite_sandwich(opts);
  throw config_error("unknown suite: '" + opts.suite + "'");
}

}  // namespace

int main(int argc, char** argv) {
  init_log_level();
  std::cout << std::setprecision(6);

  CLI::App app{"c-approximate near-neighbor search with zero false negatives"};
  app.require_subcommand(1);
  Options opts;

  CLI::App* build = app.add_subcommand("build", "Build an index from a dataset file");
  build->add_option("--input", opts.input, "Dataset file (csv or fvec)")->required();
  build->add_option("--output", opts.output, "Index file to write")->required();
  build->add_option("--format", opts.format_text, "Input format (default: by extension)")
      ->check(CLI::IsMember({"csv", "fvec"}));
  add_config_flags(build, opts, true);
  add_build_flags(build, opts);

  CLI::App* query = app.add_subcommand("query", "Query a saved index");
  query->add_option("--index", opts.index_path, "Index file")->required();
  query->add_option("--vector", opts.vector_text, "Single query vector, comma-separated");
  query->add_option("--queries", opts.queries_path, "File of query vectors");
  query->add_option("--format", opts.format_text, "Query file format (default: by extension)")
      ->check(CLI::IsMember({"csv", "fvec"}));

  CLI::App* bench = app.add_subcommand("bench", "Time queries against a saved index");
  bench->add_option("--index", opts.index_path, "Index file")->required();
  bench->add_option("--queries", opts.queries_path, "File of query vectors")->required();
  bench->add_option("--format", opts.format_text, "Query file format (default: by extension)")
      ->check(CLI::IsMember({"csv", "fvec"}));
  bench->add_flag("--oracle", opts.oracle, "Verify each result against the brute-force oracle");
  bench->add_option("--threads", opts.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();

  CLI::App* validate = app.add_subcommand("validate", "Run a statistical validation suite");
  validate->add_option("--suite", opts.suite, "bounds | tightness | sandwich")
      ->required()
      ->check(CLI::IsMember({"bounds", "tightness", "sandwich"}));
  validate->add_option("--input", opts.input, "Dataset file for the sandwich suite (default: synthetic)");
  validate->add_option("--format", opts.format_text, "Input format (default: by extension)")
      ->check(CLI::IsMember({"csv", "fvec"}));
  validate->add_option("--csv", opts.csv_path, "Also write the report as CSV to this file");
  validate->add_option("--trials", opts.trials, "Monte-Carlo trials per cell/pair");
  validate->add_option("--pairs", opts.pairs, "Far pairs per sweep cell")->capture_default_str();
  validate->add_option("--n", opts.synth_n, "Synthetic dataset size")->capture_default_str();
  validate->add_option("--d", opts.synth_d, "Synthetic dataset dimension")->capture_default_str();
  validate->add_option("--num-queries", opts.num_queries, "Sandwich queries")
      ->capture_default_str();
  add_config_flags(validate, opts, false);
  add_build_flags(validate, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (build->parsed()) return cmd_build(opts);
    if (query->parsed()) return cmd_query(opts);
    if (bench->parsed()) return cmd_bench(opts);
    if (validate->parsed()) return cmd_validate(opts);
    throw config_error("no subcommand given");
  } catch (const config_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const data_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const internal_error& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 4;
  }
}
