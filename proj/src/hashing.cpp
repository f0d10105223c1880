#include "certann/hashing.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <string>

#include "certann/detail/binary.hpp"

namespace certann {
namespace {

constexpr char kMagic[4] = {'C', 'A', 'N', 'N'};
constexpr std::uint16_t kFormatVersion = 1;

// Largest quotient whose floor still round-trips exactly through int64.
constexpr double kMaxQuotient = 4611686018427387904.0;  // 2^62

void validate_components(const Eigen::Ref<const Eigen::VectorXd>& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!(std::abs(v[i]) <= 1.0)) {
      throw data_error("hash projection component outside [-1, 1] at position " +
                       std::to_string(i));
    }
  }
}

}  // namespace

std::int64_t floor_to_key(double q) {
  if (!std::isfinite(q)) throw data_error("hash value is not finite");
  if (!(std::abs(q) < kMaxQuotient)) {
    throw data_error("hash value exceeds the 64-bit key range");
  }
  return static_cast<std::int64_t>(std::floor(q));
}

HashFunction::HashFunction(Eigen::VectorXd projection, double denominator)
    : projection_(std::move(projection)), denominator_(denominator) {
  if (projection_.size() < 1) throw data_error("hash projection must have dimension >= 1");
  validate_components(projection_);
  if (!(denominator_ > 0.0) || !std::isfinite(denominator_)) {
    throw data_error("hash denominator must be positive and finite");
  }
}

std::int64_t HashFunction::operator()(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() != projection_.size()) {
    throw data_error("hash_point: dimension mismatch (" + std::to_string(x.size()) + " vs " +
                     std::to_string(projection_.size()) + ")");
  }
  return floor_to_key(hash_dot(projection_, x) / denominator_);
}

HashFunction sample_hash_function(Distribution dist, Eigen::Index d, double r, MetricP p,
                                  RngStream& rng) {
  if (d < 1) throw config_error("dimension must be at least 1");
  if (!(r > 0.0) || !std::isfinite(r)) throw config_error("radius must be positive and finite");
  Eigen::VectorXd v(d);
  if (dist == Distribution::rademacher) {
    for (Eigen::Index i = 0; i < d; ++i) v[i] = rng.rademacher();
  } else {
    for (Eigen::Index i = 0; i < d; ++i) v[i] = rng.uniform_open();
  }
  return HashFunction(std::move(v), r * scaling_factor(d, p));
}

bool keys_adjacent(const HashKey& a, const HashKey& b) {
  if (a.size() != b.size()) {
    throw data_error("keys_adjacent: length mismatch (" + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()) + ")");
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    // Two's-complement subtraction keeps the difference exact for any pair.
    const std::uint64_t diff = a[i] >= b[i]
                                   ? static_cast<std::uint64_t>(a[i]) - static_cast<std::uint64_t>(b[i])
                                   : static_cast<std::uint64_t>(b[i]) - static_cast<std::uint64_t>(a[i]);
    if (diff > 1) return false;
  }
  return true;
}

CompositeHash::CompositeHash(Eigen::MatrixXd projections, double denominator, MetricP p, double r,
                             Distribution dist, Seed seed)
    : projections_(std::move(projections)),
      denominator_(denominator),
      p_(p),
      r_(r),
      dist_(dist),
      seed_(seed) {}

CompositeHash CompositeHash::sample(const AnalysisParams& params, int k, Seed seed) {
  if (k < 1) throw config_error("hash count k must be at least 1");
  const Eigen::Index d = params.dim();
  Eigen::MatrixXd proj(d, k);
  for (int j = 0; j < k; ++j) {
    RngStream rng(derive_stream(seed, static_cast<std::uint64_t>(j)));
    if (params.dist() == Distribution::rademacher) {
      for (Eigen::Index i = 0; i < d; ++i) proj(i, j) = rng.rademacher();
    } else {
      for (Eigen::Index i = 0; i < d; ++i) proj(i, j) = rng.uniform_open();
    }
  }
  const double denom = params.radius() * params.constants().rho_p;
  return CompositeHash(std::move(proj), denom, params.p(), params.radius(), params.dist(), seed);
}

HashKey CompositeHash::operator()(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  HashKey key;
  key_into(x, key);
  return key;
}

void CompositeHash::key_into(const Eigen::Ref<const Eigen::VectorXd>& x, HashKey& key) const {
  if (x.size() != dim()) {
    throw data_error("hash_composite: dimension mismatch (" + std::to_string(x.size()) + " vs " +
                     std::to_string(dim()) + ")");
  }
  const int kk = k();
  key.resize(static_cast<std::size_t>(kk));
  for (int j = 0; j < kk; ++j) {
    key[static_cast<std::size_t>(j)] = floor_to_key(hash_dot(projections_.col(j), x) / denominator_);
  }
}

HashFunction CompositeHash::function(int j) const {
  if (j < 0 || j >= k()) throw config_error("hash function index out of range");
  return HashFunction(projections_.col(j), denominator_);
}

std::vector<std::uint8_t> CompositeHash::serialize() const {
  std::vector<std::uint8_t> out;
  const Eigen::Index d = dim();
  const int kk = k();
  detail::put_bytes(out, kMagic, 4);
  detail::put_u16(out, kFormatVersion);
  detail::put_u32(out, static_cast<std::uint32_t>(d));
  detail::put_u32(out, static_cast<std::uint32_t>(kk));
  detail::put_f64(out, p_.value());
  detail::put_f64(out, r_);
  detail::put_u8(out, static_cast<std::uint8_t>(dist_));
  detail::put_u64(out, seed_);
  if (dist_ == Distribution::rademacher) {
    // Packed sign bits, LSB first, bit set for +1; function-major order.
    std::uint8_t byte = 0;
    int filled = 0;
    for (int j = 0; j < kk; ++j) {
      for (Eigen::Index i = 0; i < d; ++i) {
        if (projections_(i, j) > 0.0) byte |= static_cast<std::uint8_t>(1u << filled);
        if (++filled == 8) {
          out.push_back(byte);
          byte = 0;
          filled = 0;
        }
      }
    }
    if (filled > 0) out.push_back(byte);
  } else {
    for (int j = 0; j < kk; ++j) {
      for (Eigen::Index i = 0; i < d; ++i) detail::put_f64(out, projections_(i, j));
    }
  }
  return out;
}

CompositeHash CompositeHash::deserialize(const std::uint8_t* data, std::size_t size,
                                         std::size_t& offset) {
  detail::Reader in(data + offset, size - offset, "index file");
  if (in.remaining() < 4 || std::memcmp(in.take(4), kMagic, 4) != 0) {
    throw data_error("not an index file");
  }
  const std::uint16_t version = in.u16();
  if (version != kFormatVersion) {
    throw data_error("unsupported index format version " + std::to_string(version));
  }
  const std::uint32_t d32 = in.u32();
  const std::uint32_t k32 = in.u32();
  if (d32 < 1 || k32 < 1) throw data_error("corrupt index file: bad dimensions");
  const double pv = in.f64();
  if (std::isnan(pv) || pv < 1.0) throw data_error("corrupt index file: invalid metric order");
  const MetricP p(pv);
  const double r = in.f64();
  if (!(r > 0.0) || !std::isfinite(r)) throw data_error("corrupt index file: invalid radius");
  const std::uint8_t dist_tag = in.u8();
  if (dist_tag > 1) throw data_error("corrupt index file: unknown distribution tag");
  const auto dist = static_cast<Distribution>(dist_tag);
  const Seed seed = in.u64();

  const auto d = static_cast<Eigen::Index>(d32);
  const int kk = static_cast<int>(k32);
  Eigen::MatrixXd proj(d, kk);
  if (dist == Distribution::rademacher) {
    const std::size_t total = static_cast<std::size_t>(d32) * k32;
    const std::uint8_t* bits = in.take((total + 7) / 8);
    std::size_t idx = 0;
    for (int j = 0; j < kk; ++j) {
      for (Eigen::Index i = 0; i < d; ++i, ++idx) {
        proj(i, j) = (bits[idx / 8] >> (idx % 8)) & 1u ? 1.0 : -1.0;
      }
    }
  } else {
    for (int j = 0; j < kk; ++j) {
      for (Eigen::Index i = 0; i < d; ++i) {
        const double v = in.f64();
        if (!(std::abs(v) <= 1.0)) {
          throw data_error("corrupt index file: projection component outside [-1, 1]");
        }
        proj(i, j) = v;
      }
    }
  }
  offset += in.pos();
  return CompositeHash(std::move(proj), r * scaling_factor(d, p), p, r, dist, seed);
}

}  // namespace certann
