#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace certann {

using Seed = std::uint64_t;

// splitmix64 output function (Steele, Lea, Flood 2014).
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Seed for an independent substream of a base seed. Used to give every hash
// function, far-pair generator and estimator worker its own stream.
inline Seed derive_stream(Seed base, std::uint64_t stream) {
  return mix64(base + (stream + 1) * 0x9e3779b97f4a7c15ull);
}

// Deterministic random stream. All draws come from the raw 64-bit output of
// std::mt19937_64, whose sequence is fixed by the C++ standard, and the
// mappings to doubles below use only exact IEEE-754 operations. Identical
// seeds therefore yield bit-identical draws on every conforming platform.
class RngStream {
 public:
  explicit RngStream(Seed seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  // Uniform on [0, 1) with 53 random mantissa bits.
  double uniform01() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  // Uniform on the open interval (-1, 1). Mean 0, variance 1/3,
  // fourth moment 1/5; every draw satisfies |v| < 1.
  double uniform_open() {
    double u = uniform01();
    while (u == 0.0) u = uniform01();  // exclude the endpoint -1
    return 2.0 * u - 1.0;
  }

  // +1 or -1, each with probability 1/2.
  double rademacher() { return (bits() >> 63) ? 1.0 : -1.0; }

  // Standard normal via Box-Muller. Used for data generation and direction
  // sampling only, never for hash-function components.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    while (u1 == 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.141592653589793238462643383279502884 * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace certann
