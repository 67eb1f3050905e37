#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dccd/bit_vec.hpp"

namespace dccd {

// Minimal multi-word unsigned integer: base 2^32 limbs, little endian,
// normalized (no leading zero limbs). Just enough arithmetic for a
// square-and-multiply timing baseline; nothing here is constant-time.
class BigUint {
 public:
  BigUint() = default;

  static BigUint from_u64(std::uint64_t v) {
    BigUint r;
    while (v) {
      r.limbs_.push_back(static_cast<std::uint32_t>(v));
      v >>= 32;
    }
    return r;
  }

  static BigUint from_hex(std::string_view hex) {
    BigUint r;
    if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
    if (hex.empty()) throw std::invalid_argument("empty hex literal");
    r.limbs_.assign((hex.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < hex.size(); ++i) {
      const char c = hex[hex.size() - 1 - i];
      std::uint32_t nib;
      if (c >= '0' && c <= '9') nib = static_cast<std::uint32_t>(c - '0');
      else if (c >= 'a' && c <= 'f') nib = static_cast<std::uint32_t>(c - 'a' + 10);
      else if (c >= 'A' && c <= 'F') nib = static_cast<std::uint32_t>(c - 'A' + 10);
      else throw std::invalid_argument("bad hex digit");
      r.limbs_[i / 8] |= nib << (4 * (i % 8));
    }
    r.trim();
    return r;
  }

  std::string to_hex() const {
    if (is_zero()) return "0";
    static const char* digits = "0123456789abcdef";
    std::string s;
    for (std::size_t i = limbs_.size(); i-- > 0;)
      for (int nib = 7; nib >= 0; --nib)
        s.push_back(digits[(limbs_[i] >> (4 * nib)) & 0xF]);
    return s.substr(s.find_first_not_of('0'));
  }

  bool is_zero() const { return limbs_.empty(); }

  std::size_t bit_length() const {
    if (is_zero()) return 0;
    std::size_t bits = 32 * (limbs_.size() - 1);
    std::uint32_t top = limbs_.back();
    while (top) {
      ++bits;
      top >>= 1;
    }
    return bits;
  }

  int bit(std::size_t i) const {
    const std::size_t limb = i / 32;
    if (limb >= limbs_.size()) return 0;
    return static_cast<int>((limbs_[limb] >> (i % 32)) & 1u);
  }

  void set_bit(std::size_t i) {
    const std::size_t limb = i / 32;
    if (limb >= limbs_.size()) limbs_.resize(limb + 1, 0);
    limbs_[limb] |= 1u << (i % 32);
  }

  friend int compare(const BigUint& a, const BigUint& b) {
    if (a.limbs_.size() != b.limbs_.size())
      return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
    for (std::size_t i = a.limbs_.size(); i-- > 0;)
      if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
    return 0;
  }

  bool operator==(const BigUint&) const = default;

  friend BigUint operator+(const BigUint& a, const BigUint& b) {
    BigUint r;
    const std::size_t n = std::max(a.limbs_.size(), b.limbs_.size());
    r.limbs_.resize(n, 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t s = static_cast<std::uint64_t>(a.limb(i)) + b.limb(i) + carry;
      r.limbs_[i] = static_cast<std::uint32_t>(s);
      carry = s >> 32;
    }
    if (carry) r.limbs_.push_back(static_cast<std::uint32_t>(carry));
    return r;
  }

  // requires a >= b
  friend BigUint operator-(const BigUint& a, const BigUint& b) {
    BigUint r;
    r.limbs_.resize(a.limbs_.size(), 0);
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
      std::int64_t d = static_cast<std::int64_t>(a.limbs_[i]) - b.limb(i) - borrow;
      borrow = d < 0;
      if (d < 0) d += 1LL << 32;
      r.limbs_[i] = static_cast<std::uint32_t>(d);
    }
    if (borrow) throw std::invalid_argument("BigUint subtraction underflow");
    r.trim();
    return r;
  }

  friend BigUint operator*(const BigUint& a, const BigUint& b) {
    if (a.is_zero() || b.is_zero()) return {};
    BigUint r;
    r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
      std::uint64_t carry = 0;
      for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
        const std::uint64_t cur = static_cast<std::uint64_t>(a.limbs_[i]) * b.limbs_[j] +
                                  r.limbs_[i + j] + carry;
        r.limbs_[i + j] = static_cast<std::uint32_t>(cur);
        carry = cur >> 32;
      }
      r.limbs_[i + b.limbs_.size()] = static_cast<std::uint32_t>(carry);
    }
    r.trim();
    return r;
  }

  BigUint& shift_left_one() {
    std::uint32_t carry = 0;
    for (auto& l : limbs_) {
      const std::uint32_t next = l >> 31;
      l = (l << 1) | carry;
      carry = next;
    }
    if (carry) limbs_.push_back(carry);
    return *this;
  }

  // remainder of a / m by binary long division
  friend BigUint operator%(const BigUint& a, const BigUint& m) {
    if (m.is_zero()) throw std::invalid_argument("modulo by zero");
    if (compare(a, m) < 0) return a;
    BigUint r;
    for (std::size_t i = a.bit_length(); i-- > 0;) {
      r.shift_left_one();
      if (a.bit(i)) {
        if (r.limbs_.empty()) r.limbs_.push_back(1);
        else r.limbs_[0] |= 1u;
      }
      if (compare(r, m) >= 0) r = r - m;
    }
    return r;
  }

 private:
  std::uint32_t limb(std::size_t i) const {
    return i < limbs_.size() ? limbs_[i] : 0;
  }

  void trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  }

  std::vector<std::uint32_t> limbs_;
};

// base^exp mod modulus by square-and-multiply.
inline BigUint modexp(const BigUint& base, const BigUint& exp,
                      const BigUint& modulus) {
  if (modulus.is_zero() || compare(modulus, BigUint::from_u64(2)) < 0)
    throw std::invalid_argument("modulus must be >= 2");
  BigUint result = BigUint::from_u64(1);
  BigUint b = base % modulus;
  const std::size_t bits = exp.bit_length();
  for (std::size_t i = 0; i < bits; ++i) {
    if (exp.bit(i)) result = (result * b) % modulus;
    b = (b * b) % modulus;
  }
  return result;
}

inline BigUint modexp(std::uint64_t base, std::uint64_t exp, std::uint64_t modulus) {
  return modexp(BigUint::from_u64(base), BigUint::from_u64(exp),
                BigUint::from_u64(modulus));
}

// Fixed textbook-RSA parameters for the timing baseline. Deterministic,
// unpadded and built from published primes: do not reuse for anything
// that needs actual security.
struct RsaParams {
  BigUint n;
  BigUint e;
  std::size_t block_bits = 128;
};

inline RsaParams rsa_fixture_params() {
  return {BigUint::from_hex("6b1de7f0a6c10aa5602f2b21ce248de8"
                            "424b8a67a773ce2c7bea130927d200ab"),
          BigUint::from_u64(65537), 128};
}

inline std::pair<BigUint, BigUint> rsa_fixture_primes() {
  return {BigUint::from_hex("c51b139a6b86a36235bdd9877c65f657"),
          BigUint::from_hex("8b1f6fb8076aabcad7ce832e225a0bcd")};
}

inline BigUint rsa_fixture_private_exponent() {
  return BigUint::from_hex("1b76455a9b45ee96cb7c0c50d46ae6be"
                           "88dcf8b5e50a77c8c0e0e1b7b4f29a11");
}

// Splits the payload into block_bits-sized blocks (MSB first, last block
// zero padded) and encrypts each as c = b^e mod n.
inline std::vector<BigUint> rsa_encrypt(const BitVec& payload,
                                        const RsaParams& params) {
  if (payload.empty()) throw std::invalid_argument("payload must be non-empty");
  const std::size_t nblocks = (payload.size() + params.block_bits - 1) / params.block_bits;
  std::vector<BigUint> out;
  out.reserve(nblocks);
  for (std::size_t bi = 0; bi < nblocks; ++bi) {
    BigUint block;
    for (std::size_t j = 0; j < params.block_bits; ++j) {
      const std::size_t src = bi * params.block_bits + j;
      if (src < payload.size() && payload.get(src))
        block.set_bit(params.block_bits - 1 - j);
    }
    out.push_back(modexp(block, params.e, params.n));
  }
  return out;
}

inline std::vector<BigUint> rsa_decrypt(const std::vector<BigUint>& blocks,
                                        const BigUint& d, const RsaParams& params) {
  std::vector<BigUint> out;
  out.reserve(blocks.size());
  for (const auto& c : blocks) out.push_back(modexp(c, d, params.n));
  return out;
}

}  // namespace dccd
