#pragma once

#include <cstddef>
#include <cstdint>

namespace certann {

// CRC-64/XZ (reflected ECMA-182 polynomial, init and xorout ~0).
// Chain incrementally by passing the previous result as `crc`.
std::uint64_t crc64(const void* data, std::size_t size, std::uint64_t crc = 0);

}  // namespace certann
