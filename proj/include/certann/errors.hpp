#pragma once

#include <stdexcept>
#include <string>

namespace certann {

// Invalid parameters or parameter combinations. CLI exit code 2.
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed, inconsistent or out-of-range input data and files. CLI exit code 3.
class data_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A broken internal invariant; always a bug. CLI exit code 4.
class internal_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace certann
