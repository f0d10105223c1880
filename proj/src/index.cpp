#include "certann/index.hpp"

#include <algorithm>
#include <chrono>
#include <cstring>
#include <fstream>
#include <iterator>

#include "certann/crc64.hpp"
#include "certann/detail/binary.hpp"

namespace certann {
namespace {

// Probes the buckets relevant to q and returns the union of their id lists,
// sorted and deduplicated. This is the candidate set before the distance
// filter: exactly the indexed points whose key is adjacent to g(q).
std::vector<std::uint32_t> gather_candidates(const Index& index,
                                             const Eigen::Ref<const Eigen::VectorXd>& q,
                                             std::uint64_t& scanned, std::uint64_t& probed) {
  if (q.size() != index.dataset().dim()) {
    throw data_error("query: dimension mismatch (" + std::to_string(q.size()) + " vs " +
                     std::to_string(index.dataset().dim()) + ")");
  }
  const HashKey key = index.hash()(q);
  const auto& buckets = index.buckets();
  std::vector<std::uint32_t> cand;
  auto visit = [&](const HashKey& probe) {
    ++probed;
    const auto it = buckets.find(probe);
    if (it == buckets.end()) return;
    scanned += it->second.size();
    cand.insert(cand.end(), it->second.begin(), it->second.end());
  };
  if (index.mode() == IndexMode::full_expansion) {
    visit(key);
  } else {
    HashKey shifted(key.size());
    OffsetEnumerator offsets(index.k());
    while (offsets.next()) {
      const auto& off = offsets.offset();
      for (std::size_t i = 0; i < key.size(); ++i) shifted[i] = key[i] + off[i];
      visit(shifted);
    }
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  return cand;
}

}  // namespace

const char* to_string(IndexMode mode) {
  return mode == IndexMode::full_expansion ? "full" : "light";
}

std::uint64_t cells_for_k(int k, std::uint64_t budget) {
  if (k < 1) throw config_error("hash count k must be at least 1");
  std::uint64_t cells = 1;
  for (int i = 0; i < k; ++i) {
    if (cells > budget / 3) {
      throw config_error("3^" + std::to_string(k) + " cells exceed the cell budget of " +
                         std::to_string(budget));
    }
    cells *= 3;
  }
  return cells;
}

std::vector<std::vector<int>> enumerate_offsets(int k, std::uint64_t budget) {
  const std::uint64_t cells = cells_for_k(k, budget);
  std::vector<std::vector<int>> out;
  out.reserve(static_cast<std::size_t>(cells));
  OffsetEnumerator offsets(k);
  while (offsets.next()) out.push_back(offsets.offset());
  return out;
}

Index::Index(Dataset dataset, AnalysisParams params, CompositeHash hash, IndexMode mode,
             std::uint64_t cell_budget)
    : dataset_(std::move(dataset)),
      params_(std::move(params)),
      hash_(std::move(hash)),
      mode_(mode),
      cell_budget_(cell_budget) {}

Index Index::build(Dataset dataset, const AnalysisParams& params, IndexMode mode,
                   std::optional<int> k, Seed seed, std::uint64_t cell_budget) {
  const auto start = std::chrono::steady_clock::now();
  if (dataset.dim() != params.dim()) {
    throw config_error("dataset dimension (" + std::to_string(dataset.dim()) +
                       ") does not match configured dimension (" + std::to_string(params.dim()) +
                       ")");
  }
  if (dataset.size() > 0xFFFFFFFFll) {
    throw config_error("datasets beyond 2^32 - 1 points are not supported");
  }
  int kk;
  if (k.has_value()) {
    kk = *k;
    if (kk < 1) throw config_error("hash count k must be at least 1");
  } else {
    const auto& consts = params.constants();
    const auto n = static_cast<std::uint64_t>(dataset.size());
    kk = mode == IndexMode::full_expansion ? choose_k_full(n, params.dim(), consts.a)
                                           : choose_k_light(n, consts.a, consts.b);
  }
  // Both modes touch 3^k cells somewhere; fail at build, not first query.
  cells_for_k(kk, cell_budget);
  Index index(std::move(dataset), params, CompositeHash::sample(params, kk, seed), mode,
              cell_budget);
  index.insert_all();
  index.build_seconds_ = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return index;
}

void Index::insert_all() {
  const Eigen::Index n = dataset_.size();
  HashKey key;
  HashKey shifted;
  for (Eigen::Index id = 0; id < n; ++id) {
    hash_.key_into(dataset_.point(id), key);
    if (mode_ == IndexMode::light) {
      buckets_[key].push_back(static_cast<std::uint32_t>(id));
      ++stored_references_;
    } else {
      shifted.resize(key.size());
      OffsetEnumerator offsets(hash_.k());
      while (offsets.next()) {
        const auto& off = offsets.offset();
        for (std::size_t i = 0; i < key.size(); ++i) shifted[i] = key[i] + off[i];
        buckets_[shifted].push_back(static_cast<std::uint32_t>(id));
        ++stored_references_;
      }
    }
  }
}

std::vector<std::uint32_t> Index::candidates(const Eigen::Ref<const Eigen::VectorXd>& q) const {
  std::uint64_t scanned = 0;
  std::uint64_t probed = 0;
  return gather_candidates(*this, q, scanned, probed);
}

QueryResult Index::query(const Eigen::Ref<const Eigen::VectorXd>& q) const {
  QueryResult result;
  const std::vector<std::uint32_t> cand =
      gather_candidates(*this, q, result.candidates_scanned, result.buckets_probed);
  const double threshold = params_.approx_factor() * params_.radius();
  for (const std::uint32_t id : cand) {
    const double dist = lp_distance(dataset_.point(id), q, params_.p());
    if (dist <= threshold) {
      result.ids.push_back(id);
      result.distances.push_back(dist);
    }
  }
  return result;
}

void Index::save(const std::string& path) const {
  std::vector<std::uint8_t> bytes = hash_.serialize();
  detail::put_f64(bytes, params_.approx_factor());
  detail::put_u8(bytes, static_cast<std::uint8_t>(mode_));
  const Eigen::Index n = dataset_.size();
  const Eigen::Index d = dataset_.dim();
  detail::put_u64(bytes, static_cast<std::uint64_t>(n));
  for (Eigen::Index id = 0; id < n; ++id) {
    for (Eigen::Index i = 0; i < d; ++i) detail::put_f64(bytes, dataset_.points()(i, id));
  }
  detail::put_u64(bytes, buckets_.size());
  // Records are emitted in key order so identical indexes serialize to
  // identical bytes regardless of hash-map iteration order.
  std::vector<const BucketMap::value_type*> entries;
  entries.reserve(buckets_.size());
  for (const auto& entry : buckets_) entries.push_back(&entry);
  std::sort(entries.begin(), entries.end(),
            [](const auto* a, const auto* b) { return a->first < b->first; });
  for (const auto* entry : entries) {
    for (const std::int64_t v : entry->first) detail::put_i64(bytes, v);
    detail::put_u64(bytes, entry->second.size());
    for (const std::uint32_t id : entry->second) detail::put_u32(bytes, id);
  }
  detail::put_u64(bytes, crc64(bytes.data(), bytes.size()));

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw data_error("cannot write index file: " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw data_error("cannot write index file: " + path);
}

Index Index::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("cannot open index file: " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw data_error("cannot read index file: " + path);

  if (bytes.size() < 4 || std::memcmp(bytes.data(), "CANN", 4) != 0) {
    throw data_error("not an index file");
  }
  if (bytes.size() >= 6) {
    const std::uint16_t version =
        static_cast<std::uint16_t>(bytes[4] | (static_cast<std::uint16_t>(bytes[5]) << 8));
    if (version != 1) {
      throw data_error("unsupported index format version " + std::to_string(version));
    }
  }
  // Checksum covers everything before the trailing 8 bytes; a truncated file
  // cannot validate.
  if (bytes.size() < 14) throw data_error("index file checksum mismatch");
  const std::size_t body = bytes.size() - 8;
  std::uint64_t expected = 0;
  for (int i = 0; i < 8; ++i) expected |= static_cast<std::uint64_t>(bytes[body + i]) << (8 * i);
  if (crc64(bytes.data(), body) != expected) throw data_error("index file checksum mismatch");

  std::size_t offset = 0;
  CompositeHash hash = CompositeHash::deserialize(bytes.data(), body, offset);
  detail::Reader reader(bytes.data() + offset, body - offset, "index file");
  const double c = reader.f64();
  const std::uint8_t mode_tag = reader.u8();
  if (mode_tag > 1) throw data_error("corrupt index file: unknown mode tag");
  const auto mode = static_cast<IndexMode>(mode_tag);
  const std::uint64_t n = reader.u64();
  if (n > 0xFFFFFFFFull) throw data_error("corrupt index file: point count out of range");
  const Eigen::Index d = hash.dim();
  Eigen::MatrixXd points(d, static_cast<Eigen::Index>(n));
  for (std::uint64_t id = 0; id < n; ++id) {
    for (Eigen::Index i = 0; i < d; ++i) points(i, static_cast<Eigen::Index>(id)) = reader.f64();
  }

  AnalysisParams params = [&] {
    try {
      return AnalysisParams(d, hash.p(), hash.radius(), c, hash.dist());
    } catch (const config_error& e) {
      throw data_error(std::string("corrupt index file: ") + e.what());
    }
  }();

  const int kk = hash.k();
  const std::uint64_t bucket_count = reader.u64();
  BucketMap buckets;
  buckets.reserve(static_cast<std::size_t>(bucket_count));
  std::uint64_t refs = 0;
  HashKey key(static_cast<std::size_t>(kk));
  for (std::uint64_t b = 0; b < bucket_count; ++b) {
    for (int j = 0; j < kk; ++j) key[static_cast<std::size_t>(j)] = reader.i64();
    const std::uint64_t count = reader.u64();
    std::vector<std::uint32_t> ids;
    for (std::uint64_t i = 0; i < count; ++i) {
      const std::uint32_t id = reader.u32();
      if (id >= n) throw data_error("corrupt index file: point id out of range");
      ids.push_back(id);
    }
    refs += count;
    if (!buckets.emplace(key, std::move(ids)).second) {
      throw data_error("corrupt index file: duplicate bucket key");
    }
  }
  if (reader.remaining() != 0) throw data_error("corrupt index file: trailing bytes");

  Index index(Dataset(std::move(points)), std::move(params), std::move(hash), mode,
              kDefaultCellBudget);
  index.buckets_ = std::move(buckets);
  index.stored_references_ = refs;
  return index;
}

}  // namespace certann
