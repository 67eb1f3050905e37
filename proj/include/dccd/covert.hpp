#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "dccd/bit_matrix.hpp"
#include "dccd/gray_image.hpp"
#include "dccd/keyed_matrix.hpp"
#include "dccd/pgm.hpp"
#include "dccd/stego.hpp"

namespace dccd {

enum class CovertCase : std::uint8_t { kAdd = 1, kOuter = 2, kInner = 3 };
enum class InnerSemantics : std::uint8_t { kGf2 = 0, kInteger = 1 };

// Server output: a stego image (ADD), a packed w*r x w*r bit matrix
// (OUTER) or a scalar (INNER). None of the producing operations see a key.
struct CovertResult {
  CovertCase kind = CovertCase::kInner;
  InnerSemantics semantics = InnerSemantics::kGf2;
  std::variant<std::uint64_t, GrayImage, BitMatrix> carrier = std::uint64_t{0};

  const GrayImage& image() const {
    if (kind != CovertCase::kAdd)
      throw std::invalid_argument("wrong case: result carries no image");
    return std::get<GrayImage>(carrier);
  }

  const BitMatrix& matrix() const {
    if (kind != CovertCase::kOuter)
      throw std::invalid_argument("wrong case: result carries no matrix");
    return std::get<BitMatrix>(carrier);
  }

  std::uint64_t scalar() const {
    if (kind != CovertCase::kInner)
      throw std::invalid_argument("wrong case: result carries no scalar");
    return std::get<std::uint64_t>(carrier);
  }
};

inline constexpr std::size_t kDefaultOuterCap = 8192;

// Case One: XOR of the LSB planes written back into Y1.
inline CovertResult covert_add(const GrayImage& y1, const GrayImage& y2) {
  if (y1.width() != y2.width() || y1.height() != y2.height())
    throw std::invalid_argument("covert_add: image dimensions differ");
  const BitMatrix plane = extract_lsb_plane(y1) ^ extract_lsb_plane(y2);
  return {CovertCase::kAdd, InnerSemantics::kGf2, replace_lsb_plane(y1, plane)};
}

// Case Two: the w*r x w*r outer product of the cascaded LSBs. The result
// cannot ride inside an image (it is (w*r)^2 bits), so it ships as a packed
// matrix, and covers beyond the cap are rejected outright.
inline CovertResult covert_outer(const GrayImage& y1, const GrayImage& y2,
                                 std::size_t cap = kDefaultOuterCap) {
  if (y1.width() != y2.width() || y1.height() != y2.height())
    throw std::invalid_argument("covert_outer: image dimensions differ");
  const std::size_t wr = y1.pixel_count();
  if (wr > cap)
    throw std::invalid_argument("covert_outer: w*r exceeds the materialization cap");
  return {CovertCase::kOuter, InnerSemantics::kGf2,
          outer_product(detail::lsb_bits(y1), detail::lsb_bits(y2))};
}

// Case Three: inner product of the cascaded LSBs. Requires payloads
// embedded with a permutation-mode H (k = w*r), which is orthogonal over
// GF(2) and the integers, so both semantics equal m1^T m2.
inline CovertResult covert_inner(const GrayImage& y1, const GrayImage& y2,
                                 InnerSemantics semantics) {
  if (y1.width() != y2.width() || y1.height() != y2.height())
    throw std::invalid_argument("covert_inner: image dimensions differ");
  const BitVec c1 = detail::lsb_bits(y1);
  const BitVec c2 = detail::lsb_bits(y2);
  const std::uint64_t value = semantics == InnerSemantics::kGf2
                                  ? static_cast<std::uint64_t>(dot_gf2(c1, c2))
                                  : dot_count(c1, c2);
  return {CovertCase::kInner, semantics, value};
}

// Receiver side of Case One: H * lsb(Y') = m1 + m2.
inline Payload recover_add(const CovertResult& res, const HidingKey& key,
                           std::size_t k) {
  return extract(res.image(), key, k);
}

// Receiver side of Case Two: H * C * H^T = m1 m2^T.
inline BitMatrix recover_outer(const CovertResult& res, const HidingKey& key,
                               std::size_t k) {
  const BitMatrix& c = res.matrix();
  if (c.rows() != c.cols())
    throw std::invalid_argument("recover_outer: carrier matrix must be square");
  const std::size_t wr = c.rows();
  if (k > wr)
    throw std::invalid_argument("recover_outer: k exceeds carrier dimension");
  const BitMatrix h = generate_matrix(key, k, wr);
  return (h * c) * h.transposed();
}

// Case Three yields the scalar in the clear; nothing to undo.
inline std::uint64_t recover_inner(const CovertResult& res) {
  return res.scalar();
}

namespace detail {

inline void put_u32be(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

inline std::uint32_t get_u32be(std::span<const std::uint8_t> b, std::size_t at) {
  return (static_cast<std::uint32_t>(b[at]) << 24) |
         (static_cast<std::uint32_t>(b[at + 1]) << 16) |
         (static_cast<std::uint32_t>(b[at + 2]) << 8) |
         static_cast<std::uint32_t>(b[at + 3]);
}

}  // namespace detail

inline constexpr std::uint8_t kContainerVersion = 0x01;

// Container layout (big-endian): "DCCD" | version | case | semantics |
// rows u32 | cols u32 | payload. ADD carries PGM bytes, OUTER packed rows
// (byte-padded, MSB first), INNER an 8-byte count.
inline std::vector<std::uint8_t> serialize_result(const CovertResult& res) {
  std::vector<std::uint8_t> out = {'D', 'C', 'C', 'D', kContainerVersion,
                                   static_cast<std::uint8_t>(res.kind),
                                   static_cast<std::uint8_t>(res.semantics)};
  switch (res.kind) {
    case CovertCase::kAdd: {
      const GrayImage& img = res.image();
      detail::put_u32be(out, static_cast<std::uint32_t>(img.height()));
      detail::put_u32be(out, static_cast<std::uint32_t>(img.width()));
      const auto pgm = write_pgm(img);
      out.insert(out.end(), pgm.begin(), pgm.end());
      break;
    }
    case CovertCase::kOuter: {
      const BitMatrix& m = res.matrix();
      detail::put_u32be(out, static_cast<std::uint32_t>(m.rows()));
      detail::put_u32be(out, static_cast<std::uint32_t>(m.cols()));
      const auto packed = m.to_packed_bytes();
      out.insert(out.end(), packed.begin(), packed.end());
      break;
    }
    case CovertCase::kInner: {
      detail::put_u32be(out, 1);
      detail::put_u32be(out, 1);
      const std::uint64_t v = res.scalar();
      for (int i = 7; i >= 0; --i)
        out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
      break;
    }
  }
  return out;
}

inline CovertResult parse_result(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 15 || bytes[0] != 'D' || bytes[1] != 'C' ||
      bytes[2] != 'C' || bytes[3] != 'D')
    throw std::runtime_error("container: bad magic");
  if (bytes[4] != kContainerVersion)
    throw std::runtime_error("container: unsupported version");
  const std::uint8_t case_byte = bytes[5];
  if (case_byte < 1 || case_byte > 3)
    throw std::runtime_error("container: unknown case");
  const std::uint8_t sem_byte = bytes[6];
  if (sem_byte > 1) throw std::runtime_error("container: unknown semantics");
  const std::uint32_t rows = detail::get_u32be(bytes, 7);
  const std::uint32_t cols = detail::get_u32be(bytes, 11);
  const auto body = bytes.subspan(15);

  CovertResult res;
  res.kind = static_cast<CovertCase>(case_byte);
  res.semantics = static_cast<InnerSemantics>(sem_byte);
  switch (res.kind) {
    case CovertCase::kAdd: {
      std::size_t consumed = 0;
      GrayImage img = read_pgm(body, &consumed);
      if (img.height() != rows || img.width() != cols)
        throw std::runtime_error("container: header/raster dimension mismatch");
      if (consumed != body.size())
        throw std::runtime_error("container: trailing data after PGM payload");
      res.carrier = std::move(img);
      break;
    }
    case CovertCase::kOuter: {
      res.carrier = BitMatrix::from_packed_bytes(body, rows, cols);
      break;
    }
    case CovertCase::kInner: {
      if (rows != 1 || cols != 1)
        throw std::runtime_error("container: inner result must be 1x1");
      if (body.size() != 8)
        throw std::runtime_error("container: inner payload must be 8 bytes");
      std::uint64_t v = 0;
      for (int i = 0; i < 8; ++i) v = (v << 8) | body[i];
      res.carrier = v;
      break;
    }
  }
  return res;
}

}  // namespace dccd
