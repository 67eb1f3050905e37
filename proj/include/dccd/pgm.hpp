#pragma once

#include <cstdint>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dccd/gray_image.hpp"

namespace dccd {

namespace detail {

inline constexpr std::size_t kMaxPgmDim = 1u << 20;

struct PgmCursor {
  std::span<const std::uint8_t> data;
  std::size_t pos = 0;

  bool eof() const { return pos >= data.size(); }
  std::uint8_t peek() const { return data[pos]; }

  static bool is_space(std::uint8_t c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
  }

  // skips whitespace and '#' comments running to end of line
  void skip_separators() {
    while (!eof()) {
      if (is_space(peek())) {
        ++pos;
      } else if (peek() == '#') {
        while (!eof() && peek() != '\n') ++pos;
      } else {
        return;
      }
    }
  }

  std::size_t read_uint(const char* what) {
    skip_separators();
    if (eof() || peek() < '0' || peek() > '9')
      throw std::runtime_error(std::string("PGM: missing ") + what);
    std::size_t v = 0;
    while (!eof() && peek() >= '0' && peek() <= '9') {
      v = v * 10 + (peek() - '0');
      if (v > 0xFFFFFFFFu) throw std::runtime_error("PGM: dimension overflow");
      ++pos;
    }
    return v;
  }
};

}  // namespace detail

// Binary 8-bit PGM ("P5", maxval 255). consumed, when given, receives the
// number of bytes the encoding occupies (trailing data is not an error).
inline GrayImage read_pgm(std::span<const std::uint8_t> bytes,
                          std::size_t* consumed = nullptr) {
  detail::PgmCursor cur{bytes};
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5')
    throw std::runtime_error("PGM: bad magic, expected P5");
  cur.pos = 2;
  const std::size_t w = cur.read_uint("width");
  const std::size_t h = cur.read_uint("height");
  const std::size_t maxval = cur.read_uint("maxval");
  if (maxval != 255)
    throw std::runtime_error("PGM: unsupported depth, maxval must be 255");
  if (w == 0 || h == 0 || w > detail::kMaxPgmDim || h > detail::kMaxPgmDim)
    throw std::runtime_error("PGM: invalid dimensions");
  if (cur.eof() || !detail::PgmCursor::is_space(cur.peek()))
    throw std::runtime_error("PGM: missing raster separator");
  ++cur.pos;
  const std::size_t need = w * h;
  if (bytes.size() - cur.pos < need)
    throw std::runtime_error("PGM: truncated raster");
  std::vector<std::uint8_t> pixels(bytes.begin() + cur.pos,
                                   bytes.begin() + cur.pos + need);
  if (consumed) *consumed = cur.pos + need;
  return GrayImage(w, h, std::move(pixels));
}

// Canonical encoding: "P5\n<w> <h>\n255\n" + raster.
inline std::vector<std::uint8_t> write_pgm(const GrayImage& img) {
  const std::string header = "P5\n" + std::to_string(img.width()) + " " +
                             std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.raster().begin(), img.raster().end());
  return out;
}

inline GrayImage load_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return read_pgm(bytes);
}

inline void save_pgm(const std::string& path, const GrayImage& img) {
  const auto bytes = write_pgm(img);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace dccd
