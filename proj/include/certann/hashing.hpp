#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "certann/analysis.hpp"
#include "certann/errors.hpp"
#include "certann/metric.hpp"
#include "certann/rng.hpp"

namespace certann {

// Dot product with strictly sequential accumulation. Hash evaluation must
// produce the same floor at build time and query time, so it cannot go
// through Eigen's vectorized kernels, whose accumulation order depends on
// alignment and blocking.
template <typename DerivedA, typename DerivedB>
double hash_dot(const Eigen::MatrixBase<DerivedA>& v, const Eigen::MatrixBase<DerivedB>& x) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) acc += v[i] * x[i];
  return acc;
}

// One hash function x -> floor(<x,v> / denom) with denom = r * rho_p. Every
// component of v lies in [-1, 1]; together with denom this is what bounds the
// hash displacement of near pairs by 1.
class HashFunction {
 public:
  HashFunction(Eigen::VectorXd projection, double denominator);

  // Mathematical floor (toward -inf) of <x,v> / denom. Throws data_error on
  // dimension mismatch, non-finite input, or a quotient at or beyond 2^62 in
  // magnitude (the key would no longer round-trip through int64).
  std::int64_t operator()(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  const Eigen::VectorXd& projection() const { return projection_; }
  double denominator() const { return denominator_; }
  Eigen::Index dim() const { return projection_.size(); }

 private:
  Eigen::VectorXd projection_;
  double denominator_;
};

// Samples a projection vector of d i.i.d. components from dist and pairs it
// with denom = r * rho_p(d, p).
HashFunction sample_hash_function(Distribution dist, Eigen::Index d, double r, MetricP p,
                                  RngStream& rng);

// Floor of q with overflow and finiteness checks shared by HashFunction and
// the bucket math.
std::int64_t floor_to_key(double q);

using HashKey = std::vector<std::int64_t>;

// Hash for unordered containers keyed by HashKey.
struct HashKeyHash {
  std::size_t operator()(const HashKey& key) const {
    std::uint64_t h = 0x51ed270b35a4e4a1ull;
    for (std::int64_t v : key) h = mix64(h ^ static_cast<std::uint64_t>(v));
    return static_cast<std::size_t>(h);
  }
};

// True iff the keys differ by at most 1 in every coordinate, i.e.
// ||a - b||_inf <= 1. Candidates of a query are exactly the points whose key
// is adjacent to the query's key. Throws data_error on length mismatch.
bool keys_adjacent(const HashKey& a, const HashKey& b);

// k independent hash functions evaluated componentwise:
// g(x) = (h_1(x), ..., h_k(x)). All functions share d, r, p and denom; the
// j-th one is sampled from the substream derive_stream(seed, j), so a
// composite is fully determined by (params, k, seed).
class CompositeHash {
 public:
  static CompositeHash sample(const AnalysisParams& params, int k, Seed seed);

  HashKey operator()(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  // Writes g(x) into key (resized to k). Avoids an allocation per point in
  // the build loop.
  void key_into(const Eigen::Ref<const Eigen::VectorXd>& x, HashKey& key) const;

  int k() const { return static_cast<int>(projections_.cols()); }
  Eigen::Index dim() const { return projections_.rows(); }
  double denominator() const { return denominator_; }
  MetricP p() const { return p_; }
  double radius() const { return r_; }
  Distribution dist() const { return dist_; }
  Seed seed() const { return seed_; }

  // The j-th hash function (a copy; evaluation normally goes through
  // operator() on the shared matrix).
  HashFunction function(int j) const;

  // Versioned little-endian binary encoding. Bounded-uniform projections are
  // stored as raw 8-byte floats; rademacher projections as packed sign bits.
  std::vector<std::uint8_t> serialize() const;

  // Parses a serialized composite starting at data + offset; advances offset
  // past the parsed bytes. Throws data_error on bad magic, unsupported
  // version, or truncation.
  static CompositeHash deserialize(const std::uint8_t* data, std::size_t size,
                                   std::size_t& offset);

 private:
  CompositeHash(Eigen::MatrixXd projections, double denominator, MetricP p, double r,
                Distribution dist, Seed seed);

  Eigen::MatrixXd projections_;  // d x k, one hash function per column
  double denominator_;
  MetricP p_;
  double r_;
  Distribution dist_;
  Seed seed_;
};

}  // namespace certann
