#include "dccd/rsa.hpp"

#include <cstdint>

#include "dccd/prng.hpp"
#include "doctest.h"

using namespace dccd;

TEST_SUITE("rsa_baseline") {

TEST_CASE("modexp basics") {
  CHECK(modexp(5, 3, 23) == BigUint::from_u64(10));
  CHECK(modexp(7, 0, 13) == BigUint::from_u64(1));
  CHECK(modexp(0, 5, 13) == BigUint::from_u64(0));
  CHECK(modexp(2, 10, 1000) == BigUint::from_u64(24));
  CHECK_THROWS_AS(modexp(5, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(modexp(5, 3, 0), std::invalid_argument);
}

TEST_CASE("modexp agrees with native arithmetic on random inputs") {
  Xoshiro256ss rng(1);
  for (int round = 0; round < 200; ++round) {
    const std::uint64_t base = rng.next() % 100000;
    const std::uint64_t exp = rng.next() % 64;
    const std::uint64_t mod = 2 + rng.next() % 100000;
    unsigned __int128 ref = 1;
    for (std::uint64_t i = 0; i < exp; ++i)
      ref = (ref * base) % mod;
    CHECK(modexp(base, exp, mod) ==
          BigUint::from_u64(static_cast<std::uint64_t>(ref)));
  }
}

TEST_CASE("big integer arithmetic round trips") {
  const BigUint a = BigUint::from_hex("ffeeddccbbaa99887766554433221100");
  CHECK(BigUint::from_hex(a.to_hex()) == a);
  CHECK(BigUint::from_u64(0).is_zero());
  CHECK(BigUint::from_u64(0).to_hex() == "0");
  CHECK(a.bit_length() == 128);
  CHECK((a + BigUint::from_u64(0)) == a);
  CHECK((a - a).is_zero());
  CHECK_THROWS_AS(BigUint::from_u64(1) - BigUint::from_u64(2),
                  std::invalid_argument);
  CHECK_THROWS_AS(BigUint::from_hex("xyz"), std::invalid_argument);
  Xoshiro256ss rng(2);
  for (int round = 0; round < 100; ++round) {
    // 31-bit operands keep the native reference product inside 64 bits
    const std::uint64_t x = rng.next() >> 33, y = rng.next() >> 33;
    CHECK(BigUint::from_u64(x) * BigUint::from_u64(y) ==
          BigUint::from_u64(x * y));
    CHECK(BigUint::from_u64(x) % BigUint::from_u64(1 + (y | 1)) ==
          BigUint::from_u64(x % (1 + (y | 1))));
  }
}

TEST_CASE("fixture parameters are consistent") {
  const RsaParams params = rsa_fixture_params();
  const auto [p, q] = rsa_fixture_primes();
  CHECK(p * q == params.n);
  CHECK(params.e == BigUint::from_u64(65537));
  CHECK(params.n.bit_length() == 255);
  CHECK(params.block_bits == 128);
}

TEST_CASE("pinned sample ciphertext") {
  const RsaParams params = rsa_fixture_params();
  const BigUint m = BigUint::from_hex("80000000000000001234567890abcdef");
  CHECK(modexp(m, params.e, params.n) ==
        BigUint::from_hex("1bd9d90a3ed05e38d1cf902b4822a3d7"
                          "8fbc0d6f8ffc020eca822f9b3a399fc2"));
}

TEST_CASE("block arithmetic") {
  const RsaParams params = rsa_fixture_params();
  Xoshiro256ss rng(3);
  BitVec payload(5000);
  payload.fill_random(rng);
  const auto blocks = rsa_encrypt(payload, params);
  CHECK(blocks.size() == 40);  // ceil(5000 / 128)
  CHECK(rsa_encrypt(payload, params) == blocks);  // deterministic

  BitVec zeros(128);
  CHECK(rsa_encrypt(zeros, params)[0].is_zero());
  BitVec one(128);
  one.set(127, 1);  // block value 1
  CHECK(rsa_encrypt(one, params)[0] == BigUint::from_u64(1));
  CHECK_THROWS_AS(rsa_encrypt(BitVec(), params), std::invalid_argument);
}

TEST_CASE("private exponent undoes encryption block by block") {
  const RsaParams params = rsa_fixture_params();
  const BigUint d = rsa_fixture_private_exponent();
  Xoshiro256ss rng(4);
  BitVec payload(300);  // three blocks, last one padded
  payload.fill_random(rng);
  const auto cipher = rsa_encrypt(payload, params);
  const auto plain = rsa_decrypt(cipher, d, params);
  REQUIRE(plain.size() == 3);
  for (std::size_t b = 0; b < plain.size(); ++b) {
    BigUint expect;
    for (std::size_t j = 0; j < 128; ++j) {
      const std::size_t src = b * 128 + j;
      if (src < payload.size() && payload.get(src)) expect.set_bit(127 - j);
    }
    CHECK(plain[b] == expect);
  }
}

}  // TEST_SUITE
