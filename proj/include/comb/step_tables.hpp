#pragma once

// Lookup tables for eight +-1 steps encoded in a byte, bit k set meaning step
// k goes -1 (matching the tooth choice order y+1, y-1). Prefix extrema are
// taken over the positions after steps 1..8.

#include <array>
#include <cstdint>

namespace comb::detail {

struct ByteSteps {
  std::int8_t net;
  std::int8_t min_prefix;
  std::int8_t max_prefix;
};

constexpr std::array<ByteSteps, 256> make_byte_steps() {
  std::array<ByteSteps, 256> table{};
  for (unsigned b = 0; b < 256; ++b) {
    int pos = 0, lo = 8, hi = -8;
    for (int k = 0; k < 8; ++k) {
      pos += ((b >> k) & 1U) ? -1 : 1;
      lo = pos < lo ? pos : lo;
      hi = pos > hi ? pos : hi;
    }
    table[b] = {static_cast<std::int8_t>(pos), static_cast<std::int8_t>(lo), static_cast<std::int8_t>(hi)};
  }
  return table;
}

inline constexpr std::array<ByteSteps, 256> kByteSteps = make_byte_steps();

}  // namespace comb::detail
