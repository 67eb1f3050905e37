#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dccd/prng.hpp"

namespace dccd {

// Packed bit vector over GF(2). Bit i lives in word i/64 at position
// 63 - i%64 (most significant bit first); unused tail bits are kept zero,
// so word-wise comparison and popcount need no masking.
class BitVec {
 public:
  BitVec() = default;

  explicit BitVec(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

  static BitVec from_bits(std::initializer_list<int> bits) {
    BitVec v(bits.size());
    std::size_t i = 0;
    for (int b : bits) v.set(i++, b);
    return v;
  }

  static BitVec from_bytes(std::span<const std::uint8_t> bytes, std::size_t n) {
    if (bytes.size() * 8 < n)
      throw std::invalid_argument("byte buffer shorter than requested bit count");
    BitVec v(n);
    for (std::size_t i = 0; i < n; ++i)
      v.set(i, (bytes[i / 8] >> (7 - i % 8)) & 1u);
    return v;
  }

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  int get(std::size_t i) const {
    return static_cast<int>((words_[i >> 6] >> (63 - (i & 63))) & 1u);
  }

  void set(std::size_t i, int value) {
    const std::uint64_t mask = 1ULL << (63 - (i & 63));
    if (value)
      words_[i >> 6] |= mask;
    else
      words_[i >> 6] &= ~mask;
  }

  void flip(std::size_t i) { words_[i >> 6] ^= 1ULL << (63 - (i & 63)); }

  BitVec& operator^=(const BitVec& o) {
    if (o.size_ != size_) throw std::invalid_argument("BitVec size mismatch");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
    return *this;
  }

  friend BitVec operator^(BitVec a, const BitVec& b) {
    a ^= b;
    return a;
  }

  bool operator==(const BitVec&) const = default;

  std::size_t weight() const {
    std::size_t n = 0;
    for (std::uint64_t w : words_) n += std::popcount(w);
    return n;
  }

  bool is_zero() const {
    for (std::uint64_t w : words_)
      if (w) return false;
    return true;
  }

  // index of the first set bit, or size() if none
  std::size_t leading() const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w]) return w * 64 + std::countl_zero(words_[w]);
    return size_;
  }

  void fill_random(Xoshiro256ss& rng) {
    for (auto& w : words_) w = rng.next();
    mask_tail();
  }

  std::vector<std::uint8_t> to_bytes() const {
    std::vector<std::uint8_t> out((size_ + 7) / 8);
    for (std::size_t b = 0; b < out.size(); ++b)
      out[b] = static_cast<std::uint8_t>(words_[b >> 3] >> (56 - 8 * (b & 7)));
    return out;
  }

  std::string to_string() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) s[i] = get(i) ? '1' : '0';
    return s;
  }

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

 private:
  void mask_tail() {
    if (size_ & 63) words_.back() &= ~0ULL << (64 - (size_ & 63));
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

// parity of the GF(2) inner product
inline int dot_gf2(const BitVec& a, const BitVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("BitVec size mismatch");
  std::uint64_t acc = 0;
  auto aw = a.words(), bw = b.words();
  for (std::size_t w = 0; w < aw.size(); ++w) acc ^= aw[w] & bw[w];
  return static_cast<int>(std::popcount(acc) & 1u);
}

// number of positions where both vectors are 1 (integer inner product)
inline std::uint64_t dot_count(const BitVec& a, const BitVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("BitVec size mismatch");
  std::uint64_t n = 0;
  auto aw = a.words(), bw = b.words();
  for (std::size_t w = 0; w < aw.size(); ++w) n += std::popcount(aw[w] & bw[w]);
  return n;
}

inline std::size_t hamming_distance(const BitVec& a, const BitVec& b) {
  return (a ^ b).weight();
}

}  // namespace dccd
