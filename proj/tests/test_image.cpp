#include "dccd/gray_image.hpp"

#include <string>
#include <vector>

#include "dccd/pgm.hpp"
#include "doctest.h"

using namespace dccd;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& header,
                                   std::initializer_list<int> raster) {
  std::vector<std::uint8_t> out(header.begin(), header.end());
  for (int b : raster) out.push_back(static_cast<std::uint8_t>(b));
  return out;
}

}  // namespace

TEST_SUITE("image_store") {

TEST_CASE("read_pgm canonical example") {
  const GrayImage img = read_pgm(bytes_of("P5\n2 2\n255\n", {7, 8, 5, 6}));
  REQUIRE(img.width() == 2);
  REQUIRE(img.height() == 2);
  CHECK(img.pixel(0, 0) == 7);
  CHECK(img.pixel(1, 0) == 8);
  CHECK(img.pixel(0, 1) == 5);
  CHECK(img.pixel(1, 1) == 6);
}

TEST_CASE("read_pgm accepts comments and mixed whitespace") {
  const GrayImage img =
      read_pgm(bytes_of("P5 # magic\n# a comment line\n 2\t1 #w h\n255\n", {9, 4}));
  REQUIRE(img.width() == 2);
  REQUIRE(img.height() == 1);
  CHECK(img.pixel(0, 0) == 9);
  CHECK(img.pixel(1, 0) == 4);
}

TEST_CASE("read_pgm rejects malformed input") {
  CHECK_THROWS_WITH_AS(read_pgm(bytes_of("P4\n1 1\n255\n", {0})),
                       "PGM: bad magic, expected P5", std::runtime_error);
  CHECK_THROWS_WITH_AS(read_pgm(bytes_of("P5\n1 1\n65535\n", {0, 0})),
                       "PGM: unsupported depth, maxval must be 255",
                       std::runtime_error);
  CHECK_THROWS_AS(read_pgm(bytes_of("P5\n2 2\n255\n", {1, 2, 3})),
                  std::runtime_error);  // truncated raster
  CHECK_THROWS_AS(read_pgm(bytes_of("P5\n0 2\n255\n", {})), std::runtime_error);
  CHECK_THROWS_AS(read_pgm(bytes_of("P5\n2 1048577\n255\n", {})),
                  std::runtime_error);  // dimension overflow
  CHECK_THROWS_AS(read_pgm(bytes_of("P5\n1 1\n255", {})), std::runtime_error);
}

TEST_CASE("write_pgm canonical example") {
  GrayImage img(1, 1);
  const auto bytes = write_pgm(img);
  CHECK(bytes == bytes_of("P5\n1 1\n255\n", {0}));
  CHECK(bytes.size() == std::string("P5\n1 1\n255\n").size() + 1);
}

TEST_CASE("write then read is the identity") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const GrayImage img = synth_cover(seed, 37, 19);
    const auto bytes = write_pgm(img);
    CHECK(bytes.size() == std::string("P5\n37 19\n255\n").size() + 37 * 19);
    std::size_t consumed = 0;
    CHECK(read_pgm(bytes, &consumed) == img);
    CHECK(consumed == bytes.size());
  }
}

TEST_CASE("read then write reproduces canonical bytes") {
  const auto canonical = bytes_of("P5\n3 2\n255\n", {0, 55, 255, 1, 2, 3});
  CHECK(write_pgm(read_pgm(canonical)) == canonical);
}

TEST_CASE("synthetic covers are deterministic") {
  CHECK(synth_cover(42, 64, 48) == synth_cover(42, 64, 48));
  CHECK_FALSE(synth_cover(42, 64, 48) == synth_cover(43, 64, 48));
}

TEST_CASE("different seeds disagree on at least 1% of pixels") {
  std::vector<GrayImage> covers;
  for (std::uint64_t s = 0; s < 10; ++s) covers.push_back(synth_cover(s, 64, 64));
  for (std::size_t a = 0; a < covers.size(); ++a)
    for (std::size_t b = a + 1; b < covers.size(); ++b) {
      std::size_t diff = 0;
      for (std::size_t i = 0; i < 64 * 64; ++i)
        diff += covers[a].raster()[i] != covers[b].raster()[i];
      CHECK(diff >= 64 * 64 / 100);
    }
}

TEST_CASE("image validation") {
  CHECK_THROWS_AS(GrayImage(0, 4), std::invalid_argument);
  CHECK_THROWS_AS(GrayImage(4, 0), std::invalid_argument);
  CHECK_THROWS_AS(GrayImage(2, 2, std::vector<std::uint8_t>{1, 2, 3}),
                  std::invalid_argument);
}

}  // TEST_SUITE
