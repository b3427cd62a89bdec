#pragma once

#include <bit>
#include <cstdint>
#include <limits>

namespace comb {

/// SplitMix64 finalizer; bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t operator()() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

 private:
  std::uint64_t state_;
};

/// xoshiro256** (Blackman & Vigna). Satisfies UniformRandomBitGenerator.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Xoshiro256(std::uint64_t seed) noexcept {
    SplitMix64 sm(seed);
    for (auto& w : s_) w = sm();
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
    const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
  }

 private:
  std::uint64_t s_[4]{};
};

/// Buffered stream of fair random bits, least significant bit of each word
/// first. This is the random source every walk consumes: a tooth step reads
/// one bit, a backbone step reads two (first bit is the low bit of the choice).
class BitStream {
 public:
  explicit BitStream(std::uint64_t seed) noexcept : gen_(seed) {}

  int bit() noexcept {
    if (left_ == 0) refill();
    const int b = static_cast<int>(word_ & 1U);
    word_ >>= 1;
    --left_;
    return b;
  }

  /// Uniform in [0, 4): two consecutive bits.
  int two_bits() noexcept {
    const int lo = bit();
    return lo | (bit() << 1);
  }

  /// Number of bits still buffered (before a refill is needed).
  int buffered() const noexcept { return left_; }

  /// The next 8 buffered bits without consuming them. Requires buffered() >= 8.
  unsigned peek8() const noexcept { return static_cast<unsigned>(word_ & 0xFFU); }

  void skip8() noexcept {
    word_ >>= 8;
    left_ -= 8;
  }

  void refill() noexcept {
    word_ = gen_();
    left_ = 64;
  }

  /// Uniform double in [0, 1); consumes a whole fresh word (buffer untouched).
  double uniform() noexcept { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

 private:
  Xoshiro256 gen_;
  std::uint64_t word_ = 0;
  int left_ = 0;
};

}  // namespace comb
