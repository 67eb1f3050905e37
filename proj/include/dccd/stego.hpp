#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>

#include "dccd/bit_matrix.hpp"
#include "dccd/bit_vec.hpp"
#include "dccd/gf2_solve.hpp"
#include "dccd/gray_image.hpp"
#include "dccd/keyed_matrix.hpp"

namespace dccd {

using Payload = BitVec;

// LSB plane of an image: entry (row y, col x) = pixel(x, y) mod 2.
inline BitMatrix extract_lsb_plane(const GrayImage& img) {
  BitMatrix plane(img.height(), img.width());
  auto px = img.raster();
  std::size_t t = 0;
  for (std::size_t y = 0; y < img.height(); ++y)
    for (std::size_t x = 0; x < img.width(); ++x, ++t)
      if (px[t] & 1u) plane.set(y, x, 1);
  return plane;
}

// Substitutes the LSB plane; every pixel moves by at most one level and
// the upper seven bitplanes are untouched.
inline GrayImage replace_lsb_plane(const GrayImage& img, const BitMatrix& plane) {
  if (plane.rows() != img.height() || plane.cols() != img.width())
    throw std::invalid_argument("plane dimensions do not match image");
  GrayImage out = img;
  auto px = out.raster();
  std::size_t t = 0;
  for (std::size_t y = 0; y < img.height(); ++y)
    for (std::size_t x = 0; x < img.width(); ++x, ++t)
      px[t] = static_cast<std::uint8_t>((px[t] & ~1u) | plane.get(y, x));
  return out;
}

// Row-major cascade of a plane into a single bit vector.
inline BitVec flatten(const BitMatrix& plane) {
  BitVec v(plane.rows() * plane.cols());
  if (plane.cols() % 64 == 0) {
    auto vw = v.words();
    std::size_t w = 0;
    for (std::size_t i = 0; i < plane.rows(); ++i)
      for (std::uint64_t word : plane.row_words(i)) vw[w++] = word;
  } else {
    std::size_t t = 0;
    for (std::size_t i = 0; i < plane.rows(); ++i)
      for (std::size_t j = 0; j < plane.cols(); ++j, ++t)
        if (plane.get(i, j)) v.set(t, 1);
  }
  return v;
}

inline BitMatrix unflatten(const BitVec& v, std::size_t rows, std::size_t cols) {
  if (v.size() != rows * cols)
    throw std::invalid_argument("bit vector length does not match dimensions");
  BitMatrix plane(rows, cols);
  std::size_t t = 0;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j, ++t)
      if (v.get(t)) plane.set(i, j, 1);
  return plane;
}

namespace detail {

// flatten(extract_lsb_plane(img)) without the intermediate plane
inline BitVec lsb_bits(const GrayImage& img) {
  BitVec v(img.pixel_count());
  auto px = img.raster();
  auto vw = v.words();
  for (std::size_t t = 0; t < px.size(); ++t)
    vw[t >> 6] |= static_cast<std::uint64_t>(px[t] & 1u) << (63 - (t & 63));
  return v;
}

// flips the LSB of every pixel whose position is set in e
inline GrayImage apply_flips(const GrayImage& img, const BitVec& e) {
  GrayImage out = img;
  auto px = out.raster();
  auto ew = e.words();
  for (std::size_t w = 0; w < ew.size(); ++w) {
    std::uint64_t word = ew[w];
    while (word) {
      const int b = std::countl_zero(word);
      px[w * 64 + b] ^= 1u;
      word &= ~(1ULL << (63 - b));
    }
  }
  return out;
}

}  // namespace detail

// Sender/receiver endpoint bound to one key, payload size and cover
// geometry. Deriving and factoring H dominates setup, so reuse one codec
// across a batch of images.
class StegoCodec {
 public:
  StegoCodec(const HidingKey& key, std::size_t k, std::size_t width,
             std::size_t height, MatrixMode mode = MatrixMode::kGeneral)
      : StegoCodec(k, width, height, build(key, k, width, height, mode)) {}

  std::size_t k() const { return k_; }
  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  const BitMatrix& parity_matrix() const { return h_; }

  // Stego Y with H * lsb(Y) = m; at most k pixels change, each by one level.
  GrayImage embed(const GrayImage& cover, const Payload& m) const {
    check_dims(cover);
    if (m.size() != k_) throw std::invalid_argument("payload length mismatch");
    const BitVec c = detail::lsb_bits(cover);
    const BitVec syndrome = m ^ matvec(h_, c);
    if (syndrome.is_zero()) return cover;
    return detail::apply_flips(cover, solver_.solve(syndrome));
  }

  Payload extract(const GrayImage& stego) const {
    check_dims(stego);
    return matvec(h_, detail::lsb_bits(stego));
  }

 private:
  StegoCodec(std::size_t k, std::size_t width, std::size_t height,
             std::pair<BitMatrix, SyndromeSolver> parts)
      : k_(k),
        width_(width),
        height_(height),
        h_(std::move(parts.first)),
        solver_(std::move(parts.second)) {}

  // Fused generation: the solver's column sweep doubles as the full-rank
  // check of the repair loop, so each candidate matrix is swept once. The
  // accepted matrix is bit-identical to generate_matrix(key, k, w*r, mode).
  static std::pair<BitMatrix, SyndromeSolver> build(const HidingKey& key,
                                                    std::size_t k,
                                                    std::size_t width,
                                                    std::size_t height,
                                                    MatrixMode mode) {
    if (k == 0) throw std::invalid_argument("payload length must be positive");
    const std::size_t wr = width * height;
    if (k > wr)
      throw std::invalid_argument("capacity exceeded: k must be <= w*r");
    if (mode == MatrixMode::kPermutation) {
      BitMatrix h = generate_matrix(key, k, wr, mode);
      SyndromeSolver solver(h);
      return {std::move(h), std::move(solver)};
    }
    const std::uint64_t base = key.seed();
    for (std::uint64_t counter = 0;; ++counter) {
      BitMatrix h = detail::fill_matrix(base + counter, k, wr);
      SyndromeSolver solver(h, /*require_full_rank=*/false);
      if (solver.rank() == k) return {std::move(h), std::move(solver)};
    }
  }

  void check_dims(const GrayImage& img) const {
    if (img.width() != width_ || img.height() != height_)
      throw std::invalid_argument("image dimensions do not match codec");
  }

  std::size_t k_;
  std::size_t width_;
  std::size_t height_;
  BitMatrix h_;
  SyndromeSolver solver_;
};

// One-shot embedding. minimize (exhaustive coset search, w*r <= 24 only)
// exists for cross-checks against the default solver.
inline GrayImage embed(const GrayImage& cover, const Payload& m,
                       const HidingKey& key, bool minimize = false) {
  const std::size_t wr = cover.pixel_count();
  if (m.size() > wr)
    throw std::invalid_argument("capacity exceeded: k must be <= w*r");
  if (!minimize)
    return StegoCodec(key, m.size(), cover.width(), cover.height()).embed(cover, m);
  const BitMatrix h = generate_matrix(key, m.size(), wr);
  const BitVec c = detail::lsb_bits(cover);
  const BitVec syndrome = m ^ matvec(h, c);
  if (syndrome.is_zero()) return cover;
  return detail::apply_flips(cover, solve_syndrome(h, syndrome, true));
}

inline Payload extract(const GrayImage& stego, const HidingKey& key,
                       std::size_t k) {
  const std::size_t wr = stego.pixel_count();
  if (k > wr) throw std::invalid_argument("capacity exceeded: k must be <= w*r");
  return matvec(generate_matrix(key, k, wr), detail::lsb_bits(stego));
}

// Payload files are packed MSB first; the bit count travels out of band.
inline std::vector<std::uint8_t> payload_to_bytes(const Payload& m) {
  return m.to_bytes();
}

inline Payload payload_from_bytes(std::span<const std::uint8_t> bytes,
                                  std::size_t k) {
  return BitVec::from_bytes(bytes, k);
}

}  // namespace dccd
