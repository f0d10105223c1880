#include "certann/crc64.hpp"

#include <array>

namespace certann {

namespace {

constexpr std::uint64_t kPoly = 0xC96C5795D7870F42ull;  // ECMA-182, reflected

constexpr std::array<std::uint64_t, 256> make_table() {
  std::array<std::uint64_t, 256> table{};
  for (std::uint64_t i = 0; i < 256; ++i) {
    std::uint64_t c = i;
    for (int bit = 0; bit < 8; ++bit) {
      c = (c & 1) ? (c >> 1) ^ kPoly : (c >> 1);
    }
    table[i] = c;
  }
  return table;
}

constexpr auto kTable = make_table();

}  // namespace

std::uint64_t crc64(const void* data, std::size_t size, std::uint64_t crc) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t c = ~crc;
  for (std::size_t i = 0; i < size; ++i) {
    c = kTable[(c ^ bytes[i]) & 0xFF] ^ (c >> 8);
  }
  return ~c;
}

}  // namespace certann
