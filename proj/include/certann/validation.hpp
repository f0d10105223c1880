#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "certann/analysis.hpp"
#include "certann/errors.hpp"
#include "certann/index.hpp"
#include "certann/metric.hpp"
#include "certann/rng.hpp"

namespace certann {

// One-sided 99% standard-normal quantile used by all confidence bounds here.
inline constexpr double kZ99 = 2.3263478740408408;

// Wilson score upper confidence bound for a binomial proportion. Equals 1
// exactly when successes == trials; never below successes/trials.
double wilson_upper(std::uint64_t successes, std::uint64_t trials, double z = kZ99);

struct CollisionEstimate {
  std::uint64_t trials = 0;
  std::uint64_t collisions = 0;
  double rate = 0.0;            // collisions / trials
  double wilson_upper_99 = 0.0;
  int workers = 1;
};

// Exact linear scan: ids with distance < radius (strict) or <= radius
// (closed), ascending. The reference oracle for query results.
std::vector<std::uint32_t> brute_force_query(const Dataset& dataset,
                                             const Eigen::Ref<const Eigen::VectorXd>& q, MetricP p,
                                             double radius, bool strict);

// Samples `trials` independent hash functions for params' distribution and
// counts how often x and y land in the same or adjacent buckets,
// |h(x) - h(y)| <= 1. Trials are split across workers, each on its own
// derived stream; the result depends on (seed, workers) only.
CollisionEstimate estimate_collision_probability(const Eigen::Ref<const Eigen::VectorXd>& x,
                                                 const Eigen::Ref<const Eigen::VectorXd>& y,
                                                 const AnalysisParams& params,
                                                 std::uint64_t trials, Seed seed, int workers = 1);

struct FarPairRow {
  double distance = 0.0;  // actual pair distance, in (c*r, 10*c*r]
  CollisionEstimate estimate;
  double bound = 0.0;  // the false-positive probability bound for params
  bool pass = false;   // wilson_upper_99 <= bound
};

struct FarPairReport {
  AnalysisParams params;
  std::uint64_t trials_per_pair = 0;
  int workers = 1;
  std::vector<FarPairRow> rows;

  std::size_t violations() const;
};

// Generates random pairs at distance u*c*r, u uniform in [1.01, 10]
// (gaussian direction normalized in the l_p norm, random base point), and
// checks each pair's collision estimate against the closed-form bound.
// Violations are report content, not errors.
FarPairReport check_far_pair_bound(const AnalysisParams& params, std::size_t num_pairs,
                                   std::uint64_t trials, Seed seed, int workers = 1);

enum class WitnessRegime : std::uint8_t { p_ge_2, p_lt_2 };

// A point exhibiting the regime's worst case for the collision guarantee;
// collision behaviour is always measured against the origin.
struct TightnessWitness {
  Eigen::VectorXd point;
  double claimed_norm = 0.0;  // ||point||_p in exact arithmetic
  double epsilon = 0.0;
  WitnessRegime regime = WitnessRegime::p_ge_2;
};

// (r*rho_p - eps, 0, ..., 0): just under the bucket width in one coordinate.
// Its collision with the origin is deterministic — certain for every sampled
// hash function — showing the guarantee's radius cannot be improved for
// p >= 2. Requires p >= 2 and 0 < eps < r*rho_p.
TightnessWitness tightness_witness_pge2(Eigen::Index d, MetricP p, double r, double epsilon);

// r * d^(-1/p + 1/2 - eps) * (1,...,1): a constant vector whose l_p norm
// r * d^(1/2 - eps) far exceeds r, yet non-collision with the origin has
// probability at most hoeffding_bound(d, eps). Requires 1 <= p < 2, eps > 0.
TightnessWitness tightness_witness_plt2(Eigen::Index d, MetricP p, double r, double epsilon);

// 2 * exp(-d^(2*eps) / 2). Can exceed 1 for small d; reports clamp it to 1
// when rendering, the raw value here is never clamped.
double hoeffding_bound(Eigen::Index d, double epsilon);

// One sweep cell of the far-pair bound check: a (d, p, c/tau, distribution)
// combination aggregated over its pairs.
struct BoundsCell {
  Eigen::Index d = 0;
  MetricP p = MetricP(2.0);
  double c_over_tau = 0.0;
  Distribution dist = Distribution::rademacher;
  std::uint64_t trials = 0;    // total across pairs
  std::size_t pairs = 0;
  double rate = 0.0;           // aggregate collision rate
  double wilson_upper = 0.0;   // max per-pair upper bound (the binding one)
  double bound = 0.0;
  bool pass = false;           // no pair violated the bound
};

struct BoundsSweepConfig {
  std::vector<Eigen::Index> dims = {4, 16, 64};
  std::vector<MetricP> ps = {MetricP(1.0), MetricP(2.0), MetricP::infinity()};
  std::vector<double> ratios = {1.5, 3.0};  // c as multiples of tau
  std::vector<Distribution> dists = {Distribution::bounded_uniform, Distribution::rademacher};
  double r = 1.0;
  std::size_t pairs = 10;
  std::uint64_t trials = 20000;  // per pair
  Seed seed = 0;
  int workers = 1;
};

std::vector<BoundsCell> run_bounds_sweep(const BoundsSweepConfig& config);

// Human-readable table, 6 significant digits.
std::string render_bounds_text(const std::vector<BoundsCell>& cells, int workers);

// CSV with full-precision numbers. First line records the worker count as a
// comment; second line is the header d,p,c_over_tau,distribution,trials,
// rate,wilson_upper,bound,pass.
std::string render_bounds_csv(const std::vector<BoundsCell>& cells, int workers);

}  // namespace certann
