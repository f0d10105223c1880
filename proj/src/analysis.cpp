#include "certann/analysis.hpp"

#include <cmath>
#include <sstream>

namespace certann {

const char* to_string(Distribution dist) {
  switch (dist) {
    case Distribution::bounded_uniform:
      return "uniform";
    case Distribution::rademacher:
      return "rademacher";
  }
  return "?";
}

double component_stddev(Distribution dist) {
  return dist == Distribution::bounded_uniform ? std::sqrt(1.0 / 3.0) : 1.0;
}

double scaling_factor(Eigen::Index d, MetricP p) {
  if (d < 1) throw config_error("dimension must be >= 1");
  return std::pow(static_cast<double>(d), 1.0 - p.inverse());
}

double max_scale(Eigen::Index d, MetricP p) {
  if (d < 1) throw config_error("dimension must be >= 1");
  const double dd = static_cast<double>(d);
  return std::max(std::sqrt(dd), std::pow(dd, 1.0 - p.inverse()));
}

double min_approx_factor(Distribution dist, Eigen::Index d, MetricP p) {
  const double factor =
      dist == Distribution::bounded_uniform ? 2.0 / component_stddev(dist) : std::sqrt(8.0);
  return factor * max_scale(d, p);
}

double false_positive_bound(Distribution dist, double c, double tau) {
  if (!(c > tau)) {
    std::ostringstream msg;
    msg << "approximation factor below admissible threshold: need c > tau = " << tau << ", got c = "
        << c;
    throw config_error(msg.str());
  }
  if (dist == Distribution::bounded_uniform) {
    const double t = (tau / c) * (tau / c);
    return 1.0 - (1.0 - t) * (1.0 - t) / 3.0;
  }
  const double t = tau / c;
  return 1.0 - (1.0 - t) * (1.0 - t) / 2.0;
}

double gamma_exponent(double p_fp) {
  if (!(p_fp > 0.0) || !(p_fp < 1.0)) {
    throw config_error("p_fp must lie in (0, 1), got " + std::to_string(p_fp));
  }
  return kLn3 / -std::log(p_fp);
}

namespace {

int ceil_k_or_throw(double value) {
  if (!std::isfinite(value) || value > (1 << 30)) {
    throw config_error("derived hash count is out of range");
  }
  const double k = std::ceil(value);
  if (k < 1.0) {
    throw config_error("dataset too small for automatic k; supply k manually");
  }
  return static_cast<int>(k);
}

}  // namespace

int choose_k_full(std::uint64_t n, Eigen::Index d, double a) {
  if (n < 1) throw config_error("dataset too small for automatic k; supply k manually");
  if (d < 1) throw config_error("dimension must be >= 1");
  if (!(a > 0.0)) throw config_error("a = -ln(p_fp) must be positive");
  return ceil_k_or_throw(std::log(static_cast<double>(n) * a / static_cast<double>(d)) / a);
}

int choose_k_light(std::uint64_t n, double a, double b) {
  if (n < 1) throw config_error("dataset too small for automatic k; supply k manually");
  if (!(a > 0.0) || !(b > 0.0)) throw config_error("a and b must be positive");
  return ceil_k_or_throw(std::log(static_cast<double>(n) * a / b) / (a + b));
}

AnalysisParams::AnalysisParams(Eigen::Index d, MetricP p, double r, double c, Distribution dist)
    : d_(d), p_(p), r_(r), c_(c), dist_(dist) {
  if (d < 1) throw config_error("dimension must be >= 1");
  if (!(r > 0.0) || !std::isfinite(r)) throw config_error("radius must be positive and finite");
  if (!std::isfinite(c)) throw config_error("approximation factor must be finite");
  consts_.rho_p = scaling_factor(d, p);
  consts_.tau = min_approx_factor(dist, d, p);
  consts_.p_fp = false_positive_bound(dist, c, consts_.tau);  // enforces c > tau
  consts_.gamma = gamma_exponent(consts_.p_fp);
  consts_.a = -std::log(consts_.p_fp);
  consts_.b = kLn3;
}

}  // namespace certann
