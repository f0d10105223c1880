#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "certann/analysis.hpp"
#include "certann/errors.hpp"
#include "certann/hashing.hpp"
#include "certann/metric.hpp"
#include "certann/rng.hpp"

namespace certann {

// Where the 3^k adjacent-cell work happens. Both modes produce the same
// candidate set {x : ||g(x) - g(q)||_inf <= 1}; they trade preprocessing
// space against query-time probes.
enum class IndexMode : std::uint8_t {
  full_expansion = 0,  // store each point under all 3^k adjacent keys, probe 1
  light = 1,           // store each point once, probe all 3^k adjacent keys
};

const char* to_string(IndexMode mode);

// Fixed set of points, one column per point; ids are the column indices
// 0..n-1. The matrix carries the dimension even when n = 0.
class Dataset {
 public:
  explicit Dataset(Eigen::MatrixXd points) : points_(std::move(points)) {}

  Eigen::Index dim() const { return points_.rows(); }
  Eigen::Index size() const { return points_.cols(); }
  Eigen::Ref<const Eigen::VectorXd> point(Eigen::Index id) const { return points_.col(id); }
  const Eigen::MatrixXd& points() const { return points_; }

 private:
  Eigen::MatrixXd points_;
};

struct QueryResult {
  std::vector<std::uint32_t> ids;  // ascending; every id has distance <= c*r
  std::vector<double> distances;   // aligned with ids
  std::uint64_t candidates_scanned = 0;  // bucket entries visited, before dedup
  std::uint64_t buckets_probed = 0;      // map lookups: 1 (full) or 3^k (light)
};

// Cap on 3^k cells touched per point (full expansion) or per query (light).
inline constexpr std::uint64_t kDefaultCellBudget = 1ull << 24;

// 3^k, guarded: throws config_error naming the cap when 3^k would exceed
// budget (or overflow on the way there).
std::uint64_t cells_for_k(int k, std::uint64_t budget = kDefaultCellBudget);

// All 3^k offsets delta in {-1,0,1}^k, lexicographic with -1 < 0 < 1, i.e.
// from (-1,...,-1) to (1,...,1) with the last coordinate cycling fastest.
std::vector<std::vector<int>> enumerate_offsets(int k,
                                                std::uint64_t budget = kDefaultCellBudget);

// Odometer over the same sequence without materializing it; used by the
// build and query loops.
class OffsetEnumerator {
 public:
  explicit OffsetEnumerator(int k) : offset_(static_cast<std::size_t>(k), -1) {}

  // Advances to the next offset; returns false once the sequence is
  // exhausted. The first call yields (-1,...,-1).
  bool next() {
    if (!started_) {
      started_ = true;
      return true;
    }
    for (std::size_t i = offset_.size(); i-- > 0;) {
      if (offset_[i] < 1) {
        ++offset_[i];
        for (std::size_t j = i + 1; j < offset_.size(); ++j) offset_[j] = -1;
        return true;
      }
    }
    return false;
  }

  const std::vector<int>& offset() const { return offset_; }

 private:
  std::vector<int> offset_;
  bool started_ = false;
};

// Near-neighbor index with no false negatives: every indexed point within
// distance r of a query is returned, and nothing beyond c*r is. Immutable
// after build; querying is const and thread-safe.
class Index {
 public:
  using BucketMap = std::unordered_map<HashKey, std::vector<std::uint32_t>, HashKeyHash>;

  // k defaults to choose_k_full / choose_k_light for the respective mode.
  // Throws config_error when k cannot be derived (dataset too small), the
  // cell budget is exceeded, or the dataset dimension disagrees with params.
  static Index build(Dataset dataset, const AnalysisParams& params, IndexMode mode,
                     std::optional<int> k, Seed seed,
                     std::uint64_t cell_budget = kDefaultCellBudget);

  // Points within c*r of q (closed threshold), ids ascending. Guarantee:
  // contains every indexed point with distance < r.
  QueryResult query(const Eigen::Ref<const Eigen::VectorXd>& q) const;

  // Candidate ids before the distance filter: exactly the indexed points
  // whose key is adjacent to g(q). Sorted ascending, duplicate-free.
  std::vector<std::uint32_t> candidates(const Eigen::Ref<const Eigen::VectorXd>& q) const;

  void save(const std::string& path) const;
  static Index load(const std::string& path);

  const AnalysisParams& params() const { return params_; }
  const CompositeHash& hash() const { return hash_; }
  const Dataset& dataset() const { return dataset_; }
  IndexMode mode() const { return mode_; }
  int k() const { return hash_.k(); }
  Seed seed() const { return hash_.seed(); }
  std::uint64_t cell_budget() const { return cell_budget_; }
  const BucketMap& buckets() const { return buckets_; }
  std::uint64_t bucket_count() const { return buckets_.size(); }
  std::uint64_t stored_references() const { return stored_references_; }
  double build_seconds() const { return build_seconds_; }  // 0 for loaded indexes

 private:
  Index(Dataset dataset, AnalysisParams params, CompositeHash hash, IndexMode mode,
        std::uint64_t cell_budget);

  void insert_all();

  Dataset dataset_;
  AnalysisParams params_;
  CompositeHash hash_;
  IndexMode mode_;
  std::uint64_t cell_budget_;
  BucketMap buckets_;
  std::uint64_t stored_references_ = 0;
  double build_seconds_ = 0.0;
};

}  // namespace certann
