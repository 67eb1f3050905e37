#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "dccd/prng.hpp"

namespace dccd {

// 8-bit grayscale raster, rows stored top to bottom.
class GrayImage {
 public:
  GrayImage(std::size_t width, std::size_t height)
      : width_(width), height_(height), pixels_(width * height, 0) {
    if (width == 0 || height == 0)
      throw std::invalid_argument("image dimensions must be positive");
  }

  GrayImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> pixels)
      : width_(width), height_(height), pixels_(std::move(pixels)) {
    if (width == 0 || height == 0)
      throw std::invalid_argument("image dimensions must be positive");
    if (pixels_.size() != width_ * height_)
      throw std::invalid_argument("pixel buffer size mismatch");
  }

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::size_t pixel_count() const { return pixels_.size(); }

  std::uint8_t pixel(std::size_t x, std::size_t y) const {
    return pixels_[y * width_ + x];
  }

  void set_pixel(std::size_t x, std::size_t y, std::uint8_t v) {
    pixels_[y * width_ + x] = v;
  }

  std::span<const std::uint8_t> raster() const { return pixels_; }
  std::span<std::uint8_t> raster() { return pixels_; }

  bool operator==(const GrayImage&) const = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<std::uint8_t> pixels_;
};

// Deterministic pseudo-natural cover: a few seeded sinusoids plus uniform
// noise in [-4, 4], clamped to [0, 255]. Each wave amp*sin(ax + by + phi)
// expands as amp*(sin(ax)cos(by+phi) + cos(ax)sin(by+phi)) so the trig
// runs once per row/column instead of per pixel.
inline GrayImage synth_cover(std::uint64_t seed, std::size_t width,
                             std::size_t height) {
  GrayImage img(width, height);
  Xoshiro256ss rng(seed);

  constexpr int kWaves = 4;
  std::vector<double> sx(kWaves * width), cx(kWaves * width);
  std::vector<double> sy(kWaves * height), cy(kWaves * height);
  double amp[kWaves];
  for (int c = 0; c < kWaves; ++c) {
    const double fx = static_cast<double>(1 + rng.next_below(6));
    const double fy = static_cast<double>(1 + rng.next_below(6));
    const double phase = 2.0 * M_PI * (static_cast<double>(rng.next() >> 11) * 0x1.0p-53);
    amp[c] = 12.0 + static_cast<double>(rng.next_below(14));
    const double ax = 2.0 * M_PI * fx / static_cast<double>(width);
    const double by = 2.0 * M_PI * fy / static_cast<double>(height);
    for (std::size_t x = 0; x < width; ++x) {
      sx[c * width + x] = std::sin(ax * static_cast<double>(x));
      cx[c * width + x] = std::cos(ax * static_cast<double>(x));
    }
    for (std::size_t y = 0; y < height; ++y) {
      sy[c * height + y] = std::sin(by * static_cast<double>(y) + phase);
      cy[c * height + y] = std::cos(by * static_cast<double>(y) + phase);
    }
  }

  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      double v = 128.0;
      for (int c = 0; c < kWaves; ++c)
        v += amp[c] * (sx[c * width + x] * cy[c * height + y] +
                       cx[c * width + x] * sy[c * height + y]);
      const int noise = static_cast<int>(rng.next_below(9)) - 4;
      const int p = static_cast<int>(std::lround(v)) + noise;
      img.set_pixel(x, y, static_cast<std::uint8_t>(std::clamp(p, 0, 255)));
    }
  }
  return img;
}

}  // namespace dccd
