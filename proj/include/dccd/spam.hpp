#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dccd/gray_image.hpp"

namespace dccd {

inline constexpr int kSpamT = 3;
inline constexpr std::size_t kSpamStates = 2 * kSpamT + 1;        // 7
inline constexpr std::size_t kSpamHalfDim =
    kSpamStates * kSpamStates * kSpamStates;                      // 343
inline constexpr std::size_t kSpamDim = 2 * kSpamHalfDim;         // 686

using FeatureVector = std::vector<double>;

inline std::size_t spam_index(int d1, int d2, int d3) {
  return (static_cast<std::size_t>(d1 + kSpamT) * kSpamStates +
          static_cast<std::size_t>(d2 + kSpamT)) *
             kSpamStates +
         static_cast<std::size_t>(d3 + kSpamT);
}

// Second-order Markov transition probabilities of the pixel difference
// array along one scan direction, differences truncated to [-T, T].
// Entry spam_index(d1,d2,d3) = Pr(next diff = d3 | previous two = d1,d2);
// rows with no observations stay zero.
inline std::array<double, kSpamHalfDim> spam_direction(const GrayImage& img,
                                                       int drow, int dcol) {
  const int w = static_cast<int>(img.width());
  const int h = static_cast<int>(img.height());

  // start pixels p such that p, p+d, p+2d, p+3d all lie inside the image
  const int x_lo = std::max(0, -3 * dcol), x_hi = w - 1 - std::max(0, 3 * dcol);
  const int y_lo = std::max(0, -3 * drow), y_hi = h - 1 - std::max(0, 3 * drow);

  std::array<std::uint32_t, kSpamHalfDim> counts{};
  auto diff = [&](int x, int y) {
    const int d = static_cast<int>(img.pixel(x, y)) -
                  static_cast<int>(img.pixel(x + dcol, y + drow));
    return std::clamp(d, -kSpamT, kSpamT);
  };
  for (int y = y_lo; y <= y_hi; ++y)
    for (int x = x_lo; x <= x_hi; ++x) {
      const int d1 = diff(x, y);
      const int d2 = diff(x + dcol, y + drow);
      const int d3 = diff(x + 2 * dcol, y + 2 * drow);
      ++counts[spam_index(d1, d2, d3)];
    }

  std::array<double, kSpamHalfDim> probs{};
  for (std::size_t row = 0; row < kSpamStates * kSpamStates; ++row) {
    std::uint64_t total = 0;
    for (std::size_t d3 = 0; d3 < kSpamStates; ++d3)
      total += counts[row * kSpamStates + d3];
    if (total == 0) continue;
    for (std::size_t d3 = 0; d3 < kSpamStates; ++d3)
      probs[row * kSpamStates + d3] =
          static_cast<double>(counts[row * kSpamStates + d3]) /
          static_cast<double>(total);
  }
  return probs;
}

// 686-dimensional second-order SPAM vector: the four axis directions
// averaged into the first 343 entries, the four diagonals into the rest.
inline FeatureVector spam_features(const GrayImage& img) {
  if (img.width() < 3 || img.height() < 3)
    throw std::invalid_argument("image too small for SPAM features");

  static constexpr int kAxis[4][2] = {{0, 1}, {0, -1}, {1, 0}, {-1, 0}};
  static constexpr int kDiag[4][2] = {{1, 1}, {-1, -1}, {1, -1}, {-1, 1}};

  FeatureVector feats(kSpamDim, 0.0);
  for (const auto& d : kAxis) {
    const auto probs = spam_direction(img, d[0], d[1]);
    for (std::size_t i = 0; i < kSpamHalfDim; ++i) feats[i] += probs[i] * 0.25;
  }
  for (const auto& d : kDiag) {
    const auto probs = spam_direction(img, d[0], d[1]);
    for (std::size_t i = 0; i < kSpamHalfDim; ++i)
      feats[kSpamHalfDim + i] += probs[i] * 0.25;
  }
  return feats;
}

}  // namespace dccd
