#pragma once

#include <Eigen/Core>
#include <cmath>
#include <limits>
#include <string>

#include "certann/errors.hpp"

namespace certann {

// Order of an l_p metric, p in [1, inf]. The l_inf metric is stored as IEEE
// +infinity, which is a distinguished value with exact semantics: 1/p is 0,
// so exponents of the form 1 - 1/p evaluate to exactly 1.
class MetricP {
 public:
  explicit MetricP(double p) : p_(p) {
    if (std::isnan(p) || p < 1.0) {
      throw config_error("metric order p must satisfy p >= 1 (got " + std::to_string(p) + ")");
    }
  }

  static MetricP infinity() { return MetricP(std::numeric_limits<double>::infinity()); }

  bool is_infinity() const { return std::isinf(p_); }
  double value() const { return p_; }

  // 1/p, with 1/inf == 0 exactly.
  double inverse() const { return is_infinity() ? 0.0 : 1.0 / p_; }

  friend bool operator==(MetricP a, MetricP b) { return a.p_ == b.p_; }
  friend bool operator!=(MetricP a, MetricP b) { return !(a == b); }

 private:
  double p_;
};

inline std::string to_string(MetricP p) {
  if (p.is_infinity()) return "inf";
  double v = p.value();
  if (v == static_cast<long long>(v)) return std::to_string(static_cast<long long>(v));
  std::string s = std::to_string(v);
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

// ||z||_p. The largest coefficient is factored out before the power sum so
// that large p neither overflows nor underflows.
template <typename Derived>
double lp_norm(const Eigen::MatrixBase<Derived>& z, MetricP p) {
  if (z.size() == 0) return 0.0;
  if (p.is_infinity()) return z.derived().template lpNorm<Eigen::Infinity>();
  const double pv = p.value();
  if (pv == 1.0) return z.derived().template lpNorm<1>();
  if (pv == 2.0) return z.derived().template lpNorm<2>();
  const double m = z.derived().cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  const double s = (z.derived().cwiseAbs() / m).array().pow(pv).sum();
  return m * std::pow(s, 1.0 / pv);
}

template <typename DerivedA, typename DerivedB>
double lp_distance(const Eigen::MatrixBase<DerivedA>& x, const Eigen::MatrixBase<DerivedB>& y,
                   MetricP p) {
  if (x.size() != y.size()) {
    throw data_error("lp_distance: dimension mismatch (" + std::to_string(x.size()) + " vs " +
                     std::to_string(y.size()) + ")");
  }
  const Eigen::VectorXd z = x.derived().template cast<double>() - y.derived().template cast<double>();
  return lp_norm(z, p);
}

}  // namespace certann
