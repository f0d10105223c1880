#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>

#include "certann/errors.hpp"
#include "certann/index.hpp"

namespace certann {

enum class DataFormat : std::uint8_t {
  csv,   // one vector per line, comma-separated decimal floats
  fvec,  // per record: u32 dimension, then that many little-endian f32
};

// csv unless the filename ends in .fvec or .fvecs.
DataFormat format_from_extension(const std::string& path);

// Errors carry the 1-based line (csv) or record (fvec) number; all values
// must be finite and all rows must share one dimension. A file with no
// vectors is an "empty dataset" error.
Dataset read_csv(const std::string& path);
Dataset read_fvecs(const std::string& path);
Dataset read_dataset(const std::string& path, DataFormat format);

// Comma-separated floats, e.g. "0.5,-1,2e-3".
Eigen::VectorXd parse_vector(const std::string& text);

}  // namespace certann
