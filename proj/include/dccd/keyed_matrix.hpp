#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dccd/bit_matrix.hpp"
#include "dccd/prng.hpp"

namespace dccd {

// Shared secret between sender and receiver; the 64-bit seed derived from
// it drives every keyed matrix.
struct HidingKey {
  std::string bytes;

  explicit HidingKey(std::string b) : bytes(std::move(b)) {
    if (bytes.empty()) throw std::invalid_argument("hiding key must be non-empty");
  }

  std::uint64_t seed() const { return fnv1a64(bytes); }
};

enum class MatrixMode {
  kGeneral,      // full row rank k x n
  kPermutation,  // n x n permutation; orthogonal over GF(2) and the integers
};

namespace detail {

// Row-major fill from one continuous bit stream, each 64-bit output
// consumed MSB first. When cols is a multiple of 64 the stream stays
// word-aligned and whole outputs land directly in the row words.
inline BitMatrix fill_matrix(std::uint64_t seed, std::size_t k, std::size_t n) {
  BitMatrix m(k, n);
  if (n % 64 == 0) {
    Xoshiro256ss rng(seed);
    for (std::size_t i = 0; i < k; ++i) {
      auto rw = m.row_words(i);
      for (auto& w : rw) w = rng.next();
    }
  } else {
    BitSource bits(seed);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (bits.next_bit()) m.set(i, j, 1);
  }
  return m;
}

}  // namespace detail

// Uniform random bits, no rank guarantee (the "without data hiding key"
// attacker matrix).
inline BitMatrix random_matrix(Xoshiro256ss& rng, std::size_t k, std::size_t n) {
  if (k == 0 || n == 0)
    throw std::invalid_argument("matrix dimensions must be positive");
  BitMatrix m(k, n);
  for (std::size_t i = 0; i < k; ++i) {
    auto rw = m.row_words(i);
    for (auto& w : rw) w = rng.next();
    if (n & 63) rw[rw.size() - 1] &= ~0ULL << (64 - (n & 63));
  }
  return m;
}

// Deterministic matrix derived from the hiding key.
//
// General mode guarantees full row rank: if a draw comes out rank
// deficient the whole matrix is redrawn from seed + 1, seed + 2, ...
// Permutation mode runs a Fisher-Yates shuffle on the same stream
// (step i swaps with next() mod (i+1)) and sets entry (i, perm[i]).
inline BitMatrix generate_matrix(const HidingKey& key, std::size_t k,
                                 std::size_t n, MatrixMode mode = MatrixMode::kGeneral) {
  if (k == 0 || n == 0)
    throw std::invalid_argument("matrix dimensions must be positive");
  if (mode == MatrixMode::kPermutation) {
    if (k != n)
      throw std::invalid_argument("permutation mode requires k == n");
    Xoshiro256ss rng(key.seed());
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = n - 1; i > 0; --i)
      std::swap(perm[i], perm[rng.next_below(i + 1)]);
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, perm[i], 1);
    return m;
  }
  if (k > n)
    throw std::invalid_argument("general mode needs k <= n for full row rank");
  const std::uint64_t base = key.seed();
  for (std::uint64_t counter = 0;; ++counter) {
    BitMatrix m = detail::fill_matrix(base + counter, k, n);
    if (rank(m) == k) return m;
  }
}

}  // namespace dccd
