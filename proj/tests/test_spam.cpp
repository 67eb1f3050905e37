#include "dccd/spam.hpp"

#include <cmath>

#include "dccd/gray_image.hpp"
#include "doctest.h"

using namespace dccd;

TEST_SUITE("spam") {

TEST_CASE("dimension is always 686") {
  CHECK(kSpamDim == 686);
  CHECK(spam_features(synth_cover(1, 16, 16)).size() == 686);
  CHECK(spam_features(synth_cover(2, 31, 9)).size() == 686);
}

TEST_CASE("constant image concentrates on the zero transition") {
  GrayImage img(12, 12);
  for (auto& p : img.raster()) p = 77;
  const FeatureVector f = spam_features(img);
  const std::size_t zero = spam_index(0, 0, 0);
  CHECK(f[zero] == 1.0);
  CHECK(f[kSpamHalfDim + zero] == 1.0);
  double total = 0.0;
  for (double v : f) total += v;
  CHECK(total == doctest::Approx(2.0));
}

TEST_CASE("gradient image fills the expected transitions") {
  // pixel = x: horizontal differences are -1, verticals 0
  GrayImage img(4, 4);
  for (std::size_t y = 0; y < 4; ++y)
    for (std::size_t x = 0; x < 4; ++x)
      img.set_pixel(x, y, static_cast<std::uint8_t>(x));
  const FeatureVector f = spam_features(img);
  CHECK(f[spam_index(-1, -1, -1)] == doctest::Approx(0.25));  // left-to-right
  CHECK(f[spam_index(1, 1, 1)] == doctest::Approx(0.25));     // right-to-left
  CHECK(f[spam_index(0, 0, 0)] == doctest::Approx(0.5));      // both verticals
}

TEST_CASE("differences are truncated to [-3, 3]") {
  GrayImage img(8, 4);
  for (std::size_t y = 0; y < 4; ++y)
    for (std::size_t x = 0; x < 8; ++x)
      img.set_pixel(x, y, static_cast<std::uint8_t>(x * 30));  // step -30
  const auto probs = spam_direction(img, 0, 1);
  CHECK(probs[spam_index(-3, -3, -3)] == 1.0);
}

TEST_CASE("shifting all pixels by 128 without clamping changes nothing") {
  GrayImage img = synth_cover(5, 24, 18);
  for (auto& p : img.raster()) p &= 0x7F;  // keep headroom for +128
  GrayImage shifted = img;
  for (auto& p : shifted.raster()) p = static_cast<std::uint8_t>(p + 128);
  CHECK(spam_features(img) == spam_features(shifted));
}

TEST_CASE("every conditional row sums to one or zero") {
  const GrayImage img = synth_cover(6, 40, 30);
  static constexpr int dirs[8][2] = {{0, 1}, {0, -1}, {1, 0}, {-1, 0},
                                     {1, 1}, {-1, -1}, {1, -1}, {-1, 1}};
  for (const auto& d : dirs) {
    const auto probs = spam_direction(img, d[0], d[1]);
    for (std::size_t row = 0; row < kSpamStates * kSpamStates; ++row) {
      double sum = 0.0;
      for (std::size_t d3 = 0; d3 < kSpamStates; ++d3)
        sum += probs[row * kSpamStates + d3];
      const bool ok = std::fabs(sum - 1.0) < 1e-12 || sum == 0.0;
      REQUIRE(ok);
    }
  }
}

TEST_CASE("entries are probabilities") {
  const FeatureVector f = spam_features(synth_cover(7, 33, 21));
  for (double v : f) {
    REQUIRE(v >= 0.0);
    REQUIRE(v <= 1.0);
  }
}

TEST_CASE("too-small images are rejected") {
  CHECK_THROWS_AS(spam_features(GrayImage(2, 10)), std::invalid_argument);
  CHECK_THROWS_AS(spam_features(GrayImage(10, 2)), std::invalid_argument);
}

}  // TEST_SUITE
