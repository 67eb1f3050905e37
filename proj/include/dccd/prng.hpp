#pragma once

#include <cstdint>
#include <string_view>

namespace dccd {

// 64-bit FNV-1a over an arbitrary byte string.
inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// SplitMix64; expands one 64-bit seed into a stream of 64-bit words.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// xoshiro256**, state seeded from four successive SplitMix64 outputs.
class Xoshiro256ss {
 public:
  explicit Xoshiro256ss(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& w : s_) w = sm.next();
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // uniform in [0, bound); bound >= 1
  std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4];
};

// Views a generator's outputs as one continuous bit stream, each 64-bit
// word consumed most-significant-bit first.
class BitSource {
 public:
  explicit BitSource(std::uint64_t seed) : rng_(seed) {}

  int next_bit() {
    if (left_ == 0) {
      buf_ = rng_.next();
      left_ = 64;
    }
    --left_;
    return static_cast<int>((buf_ >> left_) & 1u);
  }

 private:
  Xoshiro256ss rng_;
  std::uint64_t buf_ = 0;
  int left_ = 0;
};

}  // namespace dccd
