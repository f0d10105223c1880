#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>

#include "certann/errors.hpp"
#include "certann/metric.hpp"

namespace certann {

// Distribution of the projection-vector components. Both choices keep every
// component inside [-1, 1] with mean zero, which is what makes the collision
// guarantee for near pairs unconditional.
enum class Distribution : std::uint8_t {
  bounded_uniform = 0,  // uniform on (-1, 1); stddev sqrt(1/3)
  rademacher = 1,       // {-1, +1} with probability 1/2 each
};

const char* to_string(Distribution dist);

// Component standard deviation (the alpha of the general false-positive bound).
double component_stddev(Distribution dist);

inline const double kLn3 = 1.0986122886681098;  // ln 3

/// Scaling factor d^(1 - 1/p), chosen so that ||z||_1 <= scaling_factor * ||z||_p
/// for every z in R^d. Equals 1 for p = 1 and d for p = inf.
double scaling_factor(Eigen::Index d, MetricP p);

/// max{ d^(1/2), d^(1 - 1/p) }: the d^(1/2) branch for p in [1, 2], the
/// d^(1 - 1/p) branch for p >= 2 (both coincide at p = 2).
double max_scale(Eigen::Index d, MetricP p);

/// Smallest admissible approximation factor for the false-positive bound:
/// (2 / stddev) * max_scale for bounded_uniform, sqrt(8) * max_scale for
/// rademacher. Approximation factors c <= this value carry no bound at all.
double min_approx_factor(Distribution dist, Eigen::Index d, MetricP p);

/// Upper bound on the probability that one hash function maps a pair at
/// distance > c*r into the same or adjacent buckets:
///
///   bounded_uniform:  1 - (1 - tau^2/c^2)^2 / 3
///   rademacher:       1 - (1 - tau/c)^2 / 2
///
/// Requires c > tau; throws config_error otherwise. Note: one published
/// restatement of the rademacher bound squares tau/c; this library uses the
/// form above, which is what the bound's derivation establishes. Both forms
/// have the same limit 1/2 as c grows.
double false_positive_bound(Distribution dist, double c, double tau);

/// The exponent constant ln 3 / (-ln p_fp) that governs the n^(1+gamma)-style
/// preprocessing cost of full-expansion indexes. Limits as c -> inf:
/// log2(3) ~ 1.585 for rademacher, ln3/ln1.5 ~ 2.710 for bounded_uniform.
double gamma_exponent(double p_fp);

/// Hash count for full-expansion indexes: ceil(ln(n*a/d) / a), where
/// a = -ln p_fp. Throws config_error when the formula gives k < 1 (the
/// dataset is too small for automatic selection; supply k manually).
int choose_k_full(std::uint64_t n, Eigen::Index d, double a);

/// Hash count for light indexes: ceil(ln(n*a/b) / (a+b)) with b = ln 3.
/// Same k < 1 behaviour as choose_k_full.
int choose_k_light(std::uint64_t n, double a, double b = kLn3);

struct DerivedConstants {
  double rho_p;  // scaling_factor(d, p)
  double tau;    // min_approx_factor(dist, d, p)
  double p_fp;   // false_positive_bound(dist, c, tau), in (0, 1)
  double gamma;  // ln 3 / (-ln p_fp)
  double a;      // -ln p_fp, > 0
  double b;      // ln 3
};

// Validated parameter set (d, p, r, c, distribution) plus the constants
// derived from it. Construction rejects c <= tau up front instead of letting
// a vacuous p_fp >= 1 propagate.
class AnalysisParams {
 public:
  AnalysisParams(Eigen::Index d, MetricP p, double r, double c, Distribution dist);

  Eigen::Index dim() const { return d_; }
  MetricP p() const { return p_; }
  double radius() const { return r_; }
  double approx_factor() const { return c_; }
  Distribution dist() const { return dist_; }
  const DerivedConstants& constants() const { return consts_; }

 private:
  Eigen::Index d_;
  MetricP p_;
  double r_;
  double c_;
  Distribution dist_;
  DerivedConstants consts_;
};

}  // namespace certann
