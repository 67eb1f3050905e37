#include "dccd/keyed_matrix.hpp"

#include <cstdint>
#include <string>
#include <vector>

#include "doctest.h"

using namespace dccd;

// Standalone reference for the pinned generator stream, written against
// the published algorithm descriptions rather than the library code. It
// expands the key with FNV-1a-64 -> splitmix64 x4 -> xoshiro256** and
// consumes the outputs bit by bit, most significant first.
namespace ref {

std::uint64_t fnv(const std::string& key) {
  std::uint64_t h = 14695981039346656037ULL;
  for (std::size_t i = 0; i < key.size(); ++i) {
    h = h ^ static_cast<unsigned char>(key[i]);
    h = h * 1099511628211ULL;
  }
  return h;
}

struct Stream {
  std::uint64_t s[4];
  std::uint64_t sm_state;
  std::vector<int> pending;

  explicit Stream(std::uint64_t seed) : sm_state(seed) {
    for (int i = 0; i < 4; ++i) s[i] = splitmix();
  }

  std::uint64_t splitmix() {
    sm_state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = sm_state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t rot(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }

  std::uint64_t word() {
    const std::uint64_t out = rot(s[1] * 5, 7) * 9;
    const std::uint64_t t = s[1] << 17;
    s[2] ^= s[0];
    s[3] ^= s[1];
    s[1] ^= s[2];
    s[0] ^= s[3];
    s[2] ^= t;
    s[3] = rot(s[3], 45);
    return out;
  }

  int bit() {
    if (pending.empty()) {
      const std::uint64_t w = word();
      for (int i = 63; i >= 0; --i)
        pending.insert(pending.begin(), static_cast<int>((w >> i) & 1));
    }
    const int b = pending.back();
    pending.pop_back();
    return b;
  }
};

std::vector<std::vector<int>> gen(const std::string& key, std::size_t k,
                                  std::size_t n, std::uint64_t offset) {
  Stream st(fnv(key) + offset);
  std::vector<std::vector<int>> rows(k, std::vector<int>(n));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = st.bit();
  return rows;
}

}  // namespace ref

TEST_SUITE("keyed_matrix") {

TEST_CASE("seed derivation matches FNV-1a-64") {
  CHECK(HidingKey("AB").seed() == 0x09086407b5a0edaaULL);
  CHECK(HidingKey("AB").seed() == HidingKey("AB").seed());
  CHECK(HidingKey("AB").seed() != HidingKey("BA").seed());
  CHECK_THROWS_AS(HidingKey(""), std::invalid_argument);
}

TEST_CASE("splitmix64 matches the published test vector") {
  SplitMix64 sm(0);
  CHECK(sm.next() == 0xe220a8397b1dcdafULL);
  CHECK(sm.next() == 0x6e789e6aa1b965f4ULL);
}

TEST_CASE("xoshiro stream for key AB") {
  Xoshiro256ss rng(HidingKey("AB").seed());
  CHECK(rng.next() == 0xbc9f0ee4cda43d1cULL);
  CHECK(rng.next() == 0x2a0a2e2f3f793166ULL);
}

TEST_CASE("golden matrix for key AB") {
  const BitMatrix h = generate_matrix(HidingKey("AB"), 2, 4);
  CHECK(h == BitMatrix::from_rows({{1, 0, 1, 1}, {1, 1, 0, 0}}));
}

TEST_CASE("golden matrix for key key-17") {
  const BitMatrix h = generate_matrix(HidingKey("key-17"), 3, 8);
  CHECK(h == BitMatrix::from_rows({{1, 1, 1, 0, 1, 1, 0, 0},
                                   {0, 0, 1, 1, 0, 0, 1, 0},
                                   {0, 0, 1, 0, 0, 1, 0, 1}}));
}

TEST_CASE("generation agrees with the bit-level reference stream") {
  // covers the word-aligned fast path (n % 64 == 0) and ragged widths
  for (auto [k, n] : {std::pair<std::size_t, std::size_t>{3, 64},
                      {2, 128},
                      {5, 12},
                      {4, 70},
                      {1, 1}}) {
    const std::string key = "ref-" + std::to_string(k) + "x" + std::to_string(n);
    BitMatrix got(1, 1);
    std::uint64_t offset = 0;
    // mirror the repair loop so both sides pick the same accepted draw
    for (;; ++offset) {
      got = detail::fill_matrix(HidingKey(key).seed() + offset, k, n);
      if (rank(got) == k) break;
    }
    CHECK(generate_matrix(HidingKey(key), k, n) == got);
    const auto expect = ref::gen(key, k, n, offset);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < n; ++j) REQUIRE(got.get(i, j) == expect[i][j]);
  }
}

TEST_CASE("same inputs give bit-identical matrices") {
  const HidingKey key("determinism");
  CHECK(generate_matrix(key, 6, 40) == generate_matrix(key, 6, 40));
  CHECK(generate_matrix(key, 8, 8, MatrixMode::kPermutation) ==
        generate_matrix(key, 8, 8, MatrixMode::kPermutation));
}

TEST_CASE("general mode always has full row rank") {
  for (int i = 0; i < 20; ++i) {
    const HidingKey key("rank-" + std::to_string(i));
    const std::size_t k = 1 + i % 9;
    const std::size_t n = k + (i * 7) % 30;
    CHECK(rank(generate_matrix(key, k, n)) == k);
  }
  // square draws fail the rank check often, exercising the repair loop
  for (int i = 0; i < 10; ++i) {
    const HidingKey key("square-" + std::to_string(i));
    CHECK(rank(generate_matrix(key, 12, 12)) == 12);
  }
}

TEST_CASE("permutation mode is orthogonal in both arithmetics") {
  const HidingKey key("perm");
  const BitMatrix h = generate_matrix(key, 5, 5, MatrixMode::kPermutation);
  std::size_t ones = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    std::size_t row_ones = 0, col_ones = 0;
    for (std::size_t j = 0; j < 5; ++j) {
      row_ones += static_cast<std::size_t>(h.get(i, j));
      col_ones += static_cast<std::size_t>(h.get(j, i));
      ones += static_cast<std::size_t>(h.get(i, j));
    }
    CHECK(row_ones == 1);
    CHECK(col_ones == 1);
  }
  CHECK(ones == 5);
  CHECK(h.transposed() * h == BitMatrix::identity(5));
  // integer-counting orthogonality: columns meet in 0 places, diag in 1
  for (std::size_t a = 0; a < 5; ++a)
    for (std::size_t b = 0; b < 5; ++b)
      CHECK(dot_count(h.column(a), h.column(b)) == (a == b ? 1u : 0u));
}

TEST_CASE("argument validation") {
  const HidingKey key("k");
  CHECK_THROWS_AS(generate_matrix(key, 5, 3), std::invalid_argument);
  CHECK_THROWS_AS(generate_matrix(key, 0, 3), std::invalid_argument);
  CHECK_THROWS_AS(generate_matrix(key, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(generate_matrix(key, 3, 5, MatrixMode::kPermutation),
                  std::invalid_argument);
}

TEST_CASE("random_matrix is a plain fill with no rank repair") {
  Xoshiro256ss rng(55);
  const BitMatrix a = random_matrix(rng, 9, 130);
  Xoshiro256ss rng2(55);
  const BitMatrix b = random_matrix(rng2, 9, 130);
  CHECK(a == b);
  // padding bits beyond cols must stay zero: serialize round trip says so
  CHECK(BitMatrix::from_packed_bytes(a.to_packed_bytes(), 9, 130) == a);
}

}  // TEST_SUITE
