#pragma once

// Shared helpers for the unit and acceptance suites. Deliberately free of any
// doctest dependency so the acceptance binary can reuse them.

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "certann/index.hpp"
#include "certann/metric.hpp"
#include "certann/rng.hpp"

namespace testutil {

// Plain-loop l_p distance, independent of the library's Eigen-based
// implementation. p_inf selects the max norm.
inline double ref_lp_distance(const std::vector<double>& x, const std::vector<double>& y,
                              double p, bool p_inf = false) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = std::abs(x[i] - y[i]);
    if (p_inf) {
      acc = std::max(acc, a);
    } else {
      acc += std::pow(a, p);
    }
  }
  return p_inf ? acc : std::pow(acc, 1.0 / p);
}

inline std::vector<double> to_std(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

inline Eigen::VectorXd gaussian_vector(Eigen::Index d, certann::RngStream& rng) {
  Eigen::VectorXd v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = rng.gaussian();
  return v;
}

inline Eigen::MatrixXd gaussian_points(Eigen::Index d, Eigen::Index n, certann::RngStream& rng,
                                       double scale = 1.0) {
  Eigen::MatrixXd points(d, n);
  for (Eigen::Index id = 0; id < n; ++id) {
    for (Eigen::Index i = 0; i < d; ++i) points(i, id) = scale * rng.gaussian();
  }
  return points;
}

// base plus random-direction noise of exact p-norm `dist` (up to rounding).
inline Eigen::VectorXd at_distance(const Eigen::Ref<const Eigen::VectorXd>& base, double dist,
                                   certann::MetricP p, certann::RngStream& rng) {
  const Eigen::Index d = base.size();
  Eigen::VectorXd dir(d);
  double norm = 0.0;
  do {
    dir = gaussian_vector(d, rng);
    norm = certann::lp_norm(dir, p);
  } while (norm == 0.0);
  return base + dir * (dist / norm);
}

// Median pairwise distance from a handful of random pairs; used to place the
// interesting radii relative to the data's natural scale.
inline double sample_median_distance(const certann::Dataset& data, certann::MetricP p,
                                     certann::RngStream& rng, int pairs = 200) {
  std::vector<double> dists;
  dists.reserve(static_cast<std::size_t>(pairs));
  const auto n = static_cast<std::uint64_t>(data.size());
  for (int i = 0; i < pairs; ++i) {
    const auto a = static_cast<Eigen::Index>(rng.bits() % n);
    const auto b = static_cast<Eigen::Index>(rng.bits() % n);
    if (a == b) continue;
    dists.push_back(certann::lp_distance(data.point(a), data.point(b), p));
  }
  std::sort(dists.begin(), dists.end());
  return dists.empty() ? 1.0 : dists[dists.size() / 2];
}

// True when no dataset point sits within a 1e-9 relative band of either
// decision threshold for q; such queries make float-rounding irrelevant.
inline bool boundary_safe(const certann::Dataset& data, const Eigen::VectorXd& q,
                          certann::MetricP p, double r, double cr) {
  for (Eigen::Index id = 0; id < data.size(); ++id) {
    const double dist = certann::lp_distance(data.point(id), q, p);
    if (std::abs(dist - r) <= 1e-9 * r || std::abs(dist - cr) <= 1e-9 * cr) return false;
  }
  return true;
}

class TempDir {
 public:
  TempDir() {
    const auto base = std::filesystem::temp_directory_path();
    for (int attempt = 0; attempt < 1000; ++attempt) {
      auto candidate = base / ("certann-test-" + std::to_string(counter_++));
      std::error_code ec;
      if (std::filesystem::create_directory(candidate, ec)) {
        path_ = candidate;
        return;
      }
    }
    throw std::runtime_error("cannot create temp directory");
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  static inline int counter_ = 0;
  std::filesystem::path path_;
};

inline void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

inline void write_bytes(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

inline void write_fvecs(const std::string& path, const Eigen::MatrixXd& points) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  const auto d = static_cast<std::uint32_t>(points.rows());
  for (Eigen::Index id = 0; id < points.cols(); ++id) {
    out.write(reinterpret_cast<const char*>(&d), 4);  // little-endian host assumed
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
      const float f = static_cast<float>(points(i, id));
      out.write(reinterpret_cast<const char*>(&f), 4);
    }
  }
}

inline std::string csv_of(const Eigen::MatrixXd& points) {
  std::ostringstream out;
  out.precision(17);
  for (Eigen::Index id = 0; id < points.cols(); ++id) {
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
      if (i > 0) out << ',';
      out << points(i, id);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace testutil
