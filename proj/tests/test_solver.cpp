#include "dccd/gf2_solve.hpp"

#include <cstdint>
#include <optional>
#include <string>

#include "dccd/keyed_matrix.hpp"
#include "doctest.h"

using namespace dccd;

namespace {

// Exhaustive coset search over all 2^n candidates: minimum weight per
// syndrome, independent of the solver's elimination path.
struct BruteForce {
  std::size_t k, n;
  std::vector<std::optional<std::size_t>> min_weight;  // by syndrome value

  BruteForce(const BitMatrix& h) : k(h.rows()), n(h.cols()) {
    std::vector<std::uint32_t> col(n, 0);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < k; ++i)
        if (h.get(i, j)) col[j] |= 1u << i;
    min_weight.assign(std::size_t{1} << k, std::nullopt);
    for (std::uint64_t e = 0; e < (std::uint64_t{1} << n); ++e) {
      std::uint32_t syn = 0;
      for (std::size_t j = 0; j < n; ++j)
        if ((e >> j) & 1u) syn ^= col[j];
      const std::size_t w = static_cast<std::size_t>(std::popcount(e));
      if (!min_weight[syn] || w < *min_weight[syn]) min_weight[syn] = w;
    }
  }

  std::uint32_t syndrome_value(const BitVec& s) const {
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < k; ++i)
      if (s.get(i)) v |= 1u << i;
    return v;
  }
};

BitVec vec_from_value(std::uint32_t v, std::size_t len) {
  BitVec s(len);
  for (std::size_t i = 0; i < len; ++i)
    if ((v >> i) & 1u) s.set(i, 1);
  return s;
}

}  // namespace

TEST_SUITE("gf2_solve") {

TEST_CASE("worked example: weight-1 solution") {
  const BitMatrix h = BitMatrix::from_rows({{1, 0, 1}, {0, 1, 1}});
  const BitVec s = BitVec::from_bits({1, 0});
  const BitVec e = solve_syndrome(h, s);
  CHECK(e == BitVec::from_bits({1, 0, 0}));
  CHECK(e.weight() == 1);
  CHECK(solve_syndrome(h, s, true).weight() == 1);
}

TEST_CASE("zero syndrome gives the zero solution") {
  Xoshiro256ss rng(7);
  for (int round = 0; round < 10; ++round) {
    const BitMatrix h =
        random_matrix(rng, 1 + rng.next_below(10), 1 + rng.next_below(30));
    CHECK(solve_syndrome(h, BitVec(h.rows())).is_zero());
  }
}

TEST_CASE("infeasible system is reported") {
  const BitMatrix h = BitMatrix::from_rows({{0, 0}});
  CHECK_THROWS_AS(solve_syndrome(h, BitVec::from_bits({1})), std::runtime_error);
  CHECK(solve_syndrome(h, BitVec::from_bits({0})).is_zero());
}

TEST_CASE("argument validation") {
  const BitMatrix h = BitMatrix::from_rows({{1, 0}, {0, 1}});
  CHECK_THROWS_AS(solve_syndrome(h, BitVec(3)), std::invalid_argument);
  CHECK_THROWS_AS(solve_syndrome(BitMatrix(2, 30), BitVec(2), true),
                  std::invalid_argument);  // minimize needs n <= 24
}

TEST_CASE("default solution: He = s, weight <= k, support in pivot columns") {
  Xoshiro256ss rng(8);
  for (int round = 0; round < 25; ++round) {
    const std::size_t k = 1 + rng.next_below(8);
    const std::size_t n = k + rng.next_below(20);
    const HidingKey key("solver-" + std::to_string(round));
    const BitMatrix h = generate_matrix(key, k, n);
    BitVec s(k);
    s.fill_random(rng);
    const BitVec e = solve_syndrome(h, s);
    CHECK(matvec(h, e) == s);
    CHECK(e.weight() <= k);
    const SyndromeSolver solver(h);
    CHECK(solver.solve(s) == e);
    BitVec mask(n);
    for (std::size_t p : solver.pivot_columns()) mask.set(p, 1);
    for (std::size_t j = 0; j < n; ++j)
      if (e.get(j)) REQUIRE(mask.get(j) == 1);
  }
}

TEST_CASE("exhaustive small systems match the brute-force oracle") {
  // every H and s with k <= 3, n <= 4; the acceptance suite extends to n <= 6
  for (std::size_t k = 1; k <= 3; ++k)
    for (std::size_t n = 1; n <= 4; ++n)
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (k * n)); ++bits) {
        BitMatrix h(k, n);
        for (std::size_t t = 0; t < k * n; ++t)
          if ((bits >> t) & 1u) h.set(t / n, t % n, 1);
        const BruteForce oracle(h);
        for (std::uint32_t sv = 0; sv < (1u << k); ++sv) {
          const BitVec s = vec_from_value(sv, k);
          if (!oracle.min_weight[sv]) {
            REQUIRE_THROWS_AS(solve_syndrome(h, s), std::runtime_error);
            continue;
          }
          const BitVec e = solve_syndrome(h, s);
          REQUIRE(matvec(h, e) == s);
          REQUIRE(solve_syndrome(h, s, true).weight() == *oracle.min_weight[sv]);
        }
      }
}

TEST_CASE("minimize matches coset-leader weight on random n <= 12 systems") {
  Xoshiro256ss rng(9);
  for (int round = 0; round < 40; ++round) {
    const std::size_t k = 1 + rng.next_below(6);
    const std::size_t n = 1 + rng.next_below(12);
    const BitMatrix h = random_matrix(rng, k, n);
    const BruteForce oracle(h);
    BitVec s(k);
    s.fill_random(rng);
    const auto expect = oracle.min_weight[oracle.syndrome_value(s)];
    if (!expect) {
      CHECK_THROWS_AS(solve_syndrome(h, s, true), std::runtime_error);
      continue;
    }
    const BitVec e = solve_syndrome(h, s, true);
    CHECK(matvec(h, e) == s);
    CHECK(e.weight() == *expect);
  }
}

TEST_CASE("large randomized systems solve exactly") {
  const HidingKey key("big-system");
  const BitMatrix h = generate_matrix(key, 64, 1024);
  Xoshiro256ss rng(11);
  for (int round = 0; round < 5; ++round) {
    BitVec s(64);
    s.fill_random(rng);
    const BitVec e = solve_syndrome(h, s);
    CHECK(matvec(h, e) == s);
    CHECK(e.weight() <= 64);
  }
}

TEST_CASE("wide-path solver agrees with the small-system path") {
  // same pivot rule on both sides of the n == 64 boundary
  Xoshiro256ss rng(10);
  for (int round = 0; round < 15; ++round) {
    const std::size_t k = 1 + rng.next_below(12);
    const std::size_t n = 40 + rng.next_below(25);
    const BitMatrix h = random_matrix(rng, k, n);
    BitVec s(k);
    s.fill_random(rng);
    const SyndromeSolver wide(h, false);
    std::optional<BitVec> via_wide, via_small;
    try {
      via_wide = wide.solve(s);
    } catch (const std::runtime_error&) {}
    try {
      via_small = solve_syndrome(h, s);
    } catch (const std::runtime_error&) {}
    REQUIRE(via_wide.has_value() == via_small.has_value());
    if (via_wide) CHECK(*via_wide == *via_small);
  }
}

TEST_CASE("solver construction demands full rank when asked") {
  const BitMatrix deficient = BitMatrix::from_rows({{1, 1, 0}, {1, 1, 0}});
  CHECK_THROWS_AS(SyndromeSolver{deficient}, std::runtime_error);
  CHECK(SyndromeSolver(deficient, false).rank() == 1);
}

}  // TEST_SUITE
