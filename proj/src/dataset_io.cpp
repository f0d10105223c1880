#include "certann/dataset_io.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <vector>

namespace certann {
namespace {

std::string trimmed(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& cell, const std::string& where) {
  const std::string t = trimmed(cell);
  if (t.empty()) throw data_error(where + ": invalid number ''");
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) throw data_error(where + ": invalid number '" + t + "'");
  if (!std::isfinite(v)) throw data_error(where + ": non-finite value '" + t + "'");
  return v;
}

void parse_row(const std::string& line, const std::string& where, std::vector<double>& out) {
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    const std::string cell =
        comma == std::string::npos ? line.substr(start) : line.substr(start, comma - start);
    out.push_back(parse_number(cell, where));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
}

Dataset to_dataset(const std::vector<double>& flat, Eigen::Index d, Eigen::Index n) {
  Eigen::MatrixXd points(d, n);
  for (Eigen::Index id = 0; id < n; ++id) {
    for (Eigen::Index i = 0; i < d; ++i) {
      points(i, id) = flat[static_cast<std::size_t>(id * d + i)];
    }
  }
  return Dataset(std::move(points));
}

}  // namespace

DataFormat format_from_extension(const std::string& path) {
  const auto ends_with = [&](const std::string& suffix) {
    return path.size() >= suffix.size() &&
           path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  return ends_with(".fvec") || ends_with(".fvecs") ? DataFormat::fvec : DataFormat::csv;
}

Dataset read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open dataset file: " + path);
  std::vector<double> flat;
  Eigen::Index d = 0;
  Eigen::Index n = 0;
  std::string line;
  std::size_t line_number = 0;
  std::vector<double> row;
  while (std::getline(in, line)) {
    ++line_number;
    if (trimmed(line).empty()) continue;  // blank lines are not records
    const std::string where = path + ": line " + std::to_string(line_number);
    row.clear();
    parse_row(line, where, row);
    if (n == 0) {
      d = static_cast<Eigen::Index>(row.size());
    } else if (static_cast<Eigen::Index>(row.size()) != d) {
      throw data_error(where + ": expected " + std::to_string(d) + " values, got " +
                       std::to_string(row.size()));
    }
    flat.insert(flat.end(), row.begin(), row.end());
    ++n;
  }
  if (in.bad()) throw data_error("cannot read dataset file: " + path);
  if (n == 0) throw data_error(path + ": empty dataset");
  return to_dataset(flat, d, n);
}

Dataset read_fvecs(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("cannot open dataset file: " + path);
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
  if (in.bad()) throw data_error("cannot read dataset file: " + path);
  if (bytes.empty()) throw data_error(path + ": empty dataset");

  const auto u32_at = [&](std::size_t off) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes[off + i]) << (8 * i);
    return v;
  };

  std::vector<double> flat;
  Eigen::Index d = 0;
  Eigen::Index n = 0;
  std::size_t off = 0;
  while (off < bytes.size()) {
    const std::string where = path + ": record " + std::to_string(n + 1);
    if (bytes.size() - off < 4) throw data_error(where + ": truncated");
    const std::uint32_t dim = u32_at(off);
    off += 4;
    if (dim == 0) throw data_error(where + ": zero dimension");
    if (n == 0) {
      d = static_cast<Eigen::Index>(dim);
    } else if (static_cast<Eigen::Index>(dim) != d) {
      throw data_error(where + ": dimension mismatch (" + std::to_string(dim) + " vs " +
                       std::to_string(d) + ")");
    }
    if (bytes.size() - off < static_cast<std::size_t>(dim) * 4) {
      throw data_error(where + ": truncated");
    }
    for (std::uint32_t i = 0; i < dim; ++i) {
      const double v = static_cast<double>(std::bit_cast<float>(u32_at(off)));
      off += 4;
      if (!std::isfinite(v)) throw data_error(where + ": non-finite value");
      flat.push_back(v);
    }
    ++n;
  }
  return to_dataset(flat, d, n);
}

Dataset read_dataset(const std::string& path, DataFormat format) {
  return format == DataFormat::csv ? read_csv(path) : read_fvecs(path);
}

Eigen::VectorXd parse_vector(const std::string& text) {
  if (trimmed(text).empty()) throw data_error("empty vector");
  std::vector<double> values;
  parse_row(text, "vector", values);
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v[static_cast<Eigen::Index>(i)] = values[i];
  return v;
}

}  // namespace certann
