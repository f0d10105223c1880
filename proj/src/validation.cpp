#include "certann/validation.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <thread>

#include "certann/hashing.hpp"

namespace certann {
namespace {

std::uint64_t abs_diff(std::int64_t a, std::int64_t b) {
  return a >= b ? static_cast<std::uint64_t>(a) - static_cast<std::uint64_t>(b)
                : static_cast<std::uint64_t>(b) - static_cast<std::uint64_t>(a);
}

// Collision count for one worker's chunk of trials. Each trial samples a
// fresh projection on the fly and evaluates both points against it; the
// rademacher path pulls 64 sign bits per engine draw.
std::uint64_t count_collisions(const Eigen::Ref<const Eigen::VectorXd>& x,
                               const Eigen::Ref<const Eigen::VectorXd>& y, Distribution dist,
                               double denom, std::uint64_t trials, Seed seed) {
  RngStream rng(seed);
  const Eigen::Index d = x.size();
  std::uint64_t collisions = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    double a = 0.0;
    double b = 0.0;
    if (dist == Distribution::rademacher) {
      std::uint64_t block = 0;
      for (Eigen::Index i = 0; i < d; ++i) {
        if ((i & 63) == 0) block = rng.bits();
        if ((block >> (i & 63)) & 1u) {
          a += x[i];
          b += y[i];
        } else {
          a -= x[i];
          b -= y[i];
        }
      }
    } else {
      for (Eigen::Index i = 0; i < d; ++i) {
        const double v = rng.uniform_open();
        a += v * x[i];
        b += v * y[i];
      }
    }
    if (abs_diff(floor_to_key(a / denom), floor_to_key(b / denom)) <= 1) ++collisions;
  }
  return collisions;
}

std::string sig6(double v) {
  std::ostringstream out;
  out << std::setprecision(6) << v;
  return out.str();
}

std::string full(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

}  // namespace

double wilson_upper(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials < 1) throw config_error("wilson_upper requires trials >= 1");
  if (successes > trials) throw internal_error("wilson_upper: successes exceed trials");
  if (successes == trials) return 1.0;  // the formula can round a hair below 1
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double center = phat + z2 / (2.0 * n);
  const double radius = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
  return std::min(1.0, (center + radius) / (1.0 + z2 / n));
}

std::vector<std::uint32_t> brute_force_query(const Dataset& dataset,
                                             const Eigen::Ref<const Eigen::VectorXd>& q, MetricP p,
                                             double radius, bool strict) {
  if (q.size() != dataset.dim()) {
    throw data_error("brute_force_query: dimension mismatch (" + std::to_string(q.size()) +
                     " vs " + std::to_string(dataset.dim()) + ")");
  }
  std::vector<std::uint32_t> ids;
  for (Eigen::Index id = 0; id < dataset.size(); ++id) {
    const double dist = lp_distance(dataset.point(id), q, p);
    if (strict ? dist < radius : dist <= radius) ids.push_back(static_cast<std::uint32_t>(id));
  }
  return ids;
}

CollisionEstimate estimate_collision_probability(const Eigen::Ref<const Eigen::VectorXd>& x,
                                                 const Eigen::Ref<const Eigen::VectorXd>& y,
                                                 const AnalysisParams& params,
                                                 std::uint64_t trials, Seed seed, int workers) {
  if (trials < 1) throw config_error("collision estimate requires trials >= 1");
  if (workers < 1) throw config_error("worker count must be >= 1");
  if (x.size() != params.dim() || y.size() != params.dim()) {
    throw data_error("collision estimate: dimension mismatch");
  }
  const double denom = params.radius() * params.constants().rho_p;
  const auto w = static_cast<std::uint64_t>(workers);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(workers), 0);
  auto run_chunk = [&](std::size_t worker) {
    const std::uint64_t base = trials / w;
    const std::uint64_t extra = worker < trials % w ? 1 : 0;
    counts[worker] = count_collisions(x, y, params.dist(), denom, base + extra,
                                      derive_stream(seed, worker));
  };
  if (workers == 1) {
    run_chunk(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (std::size_t i = 0; i < static_cast<std::size_t>(workers); ++i) {
      pool.emplace_back(run_chunk, i);
    }
    for (auto& t : pool) t.join();
  }
  std::uint64_t collisions = 0;
  for (const std::uint64_t c : counts) collisions += c;
  CollisionEstimate est;
  est.trials = trials;
  est.collisions = collisions;
  est.rate = static_cast<double>(collisions) / static_cast<double>(trials);
  est.wilson_upper_99 = wilson_upper(collisions, trials);
  est.workers = workers;
  return est;
}

std::size_t FarPairReport::violations() const {
  std::size_t count = 0;
  for (const FarPairRow& row : rows) {
    if (!row.pass) ++count;
  }
  return count;
}

FarPairReport check_far_pair_bound(const AnalysisParams& params, std::size_t num_pairs,
                                   std::uint64_t trials, Seed seed, int workers) {
  if (num_pairs < 1) throw config_error("far-pair check requires at least one pair");
  const Eigen::Index d = params.dim();
  const double cr = params.approx_factor() * params.radius();
  FarPairReport report{params, trials, workers, {}};
  report.rows.reserve(num_pairs);
  for (std::size_t j = 0; j < num_pairs; ++j) {
    RngStream gen(derive_stream(seed, 2 * j));
    Eigen::VectorXd dir(d);
    double norm = 0.0;
    do {
      for (Eigen::Index i = 0; i < d; ++i) dir[i] = gen.gaussian();
      norm = lp_norm(dir, params.p());
    } while (norm == 0.0);
    // Distance u*c*r with u in [1.01, 10]; the base point is random so the
    // pair does not sit in a special phase relative to the bucket grid.
    const double u = 1.01 + (10.0 - 1.01) * gen.uniform01();
    Eigen::VectorXd base(d);
    for (Eigen::Index i = 0; i < d; ++i) base[i] = cr * gen.gaussian();
    const Eigen::VectorXd far = base + dir * (u * cr / norm);

    FarPairRow row;
    row.distance = lp_distance(far, base, params.p());
    row.estimate = estimate_collision_probability(far, base, params, trials,
                                                  derive_stream(seed, 2 * j + 1), workers);
    row.bound = params.constants().p_fp;
    row.pass = row.estimate.wilson_upper_99 <= row.bound;
    report.rows.push_back(row);
  }
  return report;
}

TightnessWitness tightness_witness_pge2(Eigen::Index d, MetricP p, double r, double epsilon) {
  if (d < 1) throw config_error("dimension must be >= 1");
  if (!(r > 0.0) || !std::isfinite(r)) throw config_error("radius must be positive and finite");
  if (!(p.value() >= 2.0)) throw config_error("this witness requires p >= 2");
  const double width = r * scaling_factor(d, p);
  if (!(epsilon > 0.0) || !(epsilon < width)) {
    throw config_error("epsilon must lie in (0, r*rho_p) = (0, " + std::to_string(width) + ")");
  }
  TightnessWitness w;
  w.point = Eigen::VectorXd::Zero(d);
  w.point[0] = width - epsilon;
  w.claimed_norm = width - epsilon;
  w.epsilon = epsilon;
  w.regime = WitnessRegime::p_ge_2;
  return w;
}

TightnessWitness tightness_witness_plt2(Eigen::Index d, MetricP p, double r, double epsilon) {
  if (d < 1) throw config_error("dimension must be >= 1");
  if (!(r > 0.0) || !std::isfinite(r)) throw config_error("radius must be positive and finite");
  if (!(p.value() < 2.0)) throw config_error("this witness requires p < 2");
  if (!(epsilon > 0.0)) throw config_error("epsilon must be positive");
  TightnessWitness w;
  const double coef = r * std::pow(static_cast<double>(d), -p.inverse() + 0.5 - epsilon);
  w.point = Eigen::VectorXd::Constant(d, coef);
  w.claimed_norm = r * std::pow(static_cast<double>(d), 0.5 - epsilon);
  w.epsilon = epsilon;
  w.regime = WitnessRegime::p_lt_2;
  return w;
}

double hoeffding_bound(Eigen::Index d, double epsilon) {
  if (d < 1) throw config_error("dimension must be >= 1");
  if (!(epsilon > 0.0)) throw config_error("epsilon must be positive");
  return 2.0 * std::exp(-std::pow(static_cast<double>(d), 2.0 * epsilon) / 2.0);
}

std::vector<BoundsCell> run_bounds_sweep(const BoundsSweepConfig& config) {
  std::vector<BoundsCell> cells;
  std::uint64_t cell_index = 0;
  for (const Distribution dist : config.dists) {
    for (const Eigen::Index d : config.dims) {
      for (const MetricP p : config.ps) {
        for (const double ratio : config.ratios) {
          const double tau = min_approx_factor(dist, d, p);
          const AnalysisParams params(d, p, config.r, ratio * tau, dist);
          const FarPairReport report = check_far_pair_bound(
              params, config.pairs, config.trials, derive_stream(config.seed, cell_index++),
              config.workers);
          BoundsCell cell;
          cell.d = d;
          cell.p = p;
          cell.c_over_tau = ratio;
          cell.dist = dist;
          cell.trials = config.trials * config.pairs;
          cell.pairs = config.pairs;
          std::uint64_t collisions = 0;
          double worst = 0.0;
          for (const FarPairRow& row : report.rows) {
            collisions += row.estimate.collisions;
            worst = std::max(worst, row.estimate.wilson_upper_99);
          }
          cell.rate = static_cast<double>(collisions) / static_cast<double>(cell.trials);
          cell.wilson_upper = worst;
          cell.bound = params.constants().p_fp;
          cell.pass = report.violations() == 0;
          cells.push_back(cell);
        }
      }
    }
  }
  return cells;
}

std::string render_bounds_text(const std::vector<BoundsCell>& cells, int workers) {
  std::ostringstream out;
  out << "far-pair collision bound check (workers=" << workers << ")\n";
  out << std::left << std::setw(6) << "d" << std::setw(6) << "p" << std::setw(8) << "c/tau"
      << std::setw(12) << "dist" << std::setw(10) << "trials" << std::setw(12) << "rate"
      << std::setw(14) << "wilson_upper" << std::setw(12) << "bound" << "pass" << '\n';
  for (const BoundsCell& cell : cells) {
    out << std::left << std::setw(6) << cell.d << std::setw(6) << to_string(cell.p)
        << std::setw(8) << sig6(cell.c_over_tau) << std::setw(12) << to_string(cell.dist)
        << std::setw(10) << cell.trials << std::setw(12) << sig6(cell.rate) << std::setw(14)
        << sig6(cell.wilson_upper) << std::setw(12) << sig6(cell.bound)
        << (cell.pass ? "yes" : "NO") << '\n';
  }
  return out.str();
}

std::string render_bounds_csv(const std::vector<BoundsCell>& cells, int workers) {
  std::ostringstream out;
  out << "# workers=" << workers << '\n';
  out << "d,p,c_over_tau,distribution,trials,rate,wilson_upper,bound,pass\n";
  for (const BoundsCell& cell : cells) {
    out << cell.d << ',' << to_string(cell.p) << ',' << full(cell.c_over_tau) << ','
        << to_string(cell.dist) << ',' << cell.trials << ',' << full(cell.rate) << ','
        << full(cell.wilson_upper) << ',' << full(cell.bound) << ','
        << (cell.pass ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace certann
