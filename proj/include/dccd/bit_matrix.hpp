#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dccd/bit_vec.hpp"

namespace dccd {

namespace detail {

// In-place 64x64 bit transpose (Hacker's Delight 7-3). Works unchanged for
// the MSB-first column convention used throughout.
inline void transpose64(std::uint64_t x[64]) {
  std::uint64_t m = 0x00000000FFFFFFFFULL;
  for (int j = 32; j != 0; j >>= 1, m ^= m << j) {
    for (int k = 0; k < 64; k = (k + j + 1) & ~j) {
      const std::uint64_t t = (x[k] ^ (x[k + j] >> j)) & m;
      x[k] ^= t;
      x[k + j] ^= t << j;
    }
  }
}

}  // namespace detail

// Dense bit matrix over GF(2), rows packed into 64-bit words, bit (i,j)
// at word j/64 position 63 - j%64. Padding bits past cols stay zero.
class BitMatrix {
 public:
  BitMatrix() = default;

  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_((cols + 63) / 64) {
    if (rows == 0 || cols == 0)
      throw std::invalid_argument("BitMatrix dimensions must be positive");
    bits_.assign(rows_ * stride_, 0);
  }

  static BitMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows) {
    BitMatrix m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& r : rows) {
      if (r.size() != m.cols_) throw std::invalid_argument("ragged row list");
      std::size_t j = 0;
      for (int b : r) m.set(i, j++, b);
      ++i;
    }
    return m;
  }

  static BitMatrix identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t word_stride() const { return stride_; }

  int get(std::size_t i, std::size_t j) const {
    return static_cast<int>((bits_[i * stride_ + (j >> 6)] >> (63 - (j & 63))) & 1u);
  }

  void set(std::size_t i, std::size_t j, int value) {
    const std::uint64_t mask = 1ULL << (63 - (j & 63));
    if (value)
      bits_[i * stride_ + (j >> 6)] |= mask;
    else
      bits_[i * stride_ + (j >> 6)] &= ~mask;
  }

  std::span<const std::uint64_t> row_words(std::size_t i) const {
    return {bits_.data() + i * stride_, stride_};
  }

  std::span<std::uint64_t> row_words(std::size_t i) {
    return {bits_.data() + i * stride_, stride_};
  }

  BitVec row(std::size_t i) const {
    BitVec v(cols_);
    auto rw = row_words(i);
    auto vw = v.words();
    for (std::size_t w = 0; w < stride_; ++w) vw[w] = rw[w];
    return v;
  }

  void set_row(std::size_t i, const BitVec& v) {
    if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
    auto rw = row_words(i);
    auto vw = v.words();
    for (std::size_t w = 0; w < stride_; ++w) rw[w] = vw[w];
  }

  BitVec column(std::size_t j) const {
    BitVec v(rows_);
    const std::size_t word = j >> 6;
    const int shift = 63 - static_cast<int>(j & 63);
    for (std::size_t i = 0; i < rows_; ++i)
      if ((bits_[i * stride_ + word] >> shift) & 1u) v.set(i, 1);
    return v;
  }

  bool operator==(const BitMatrix&) const = default;

  std::size_t weight() const {
    std::size_t n = 0;
    for (std::uint64_t w : bits_) n += std::popcount(w);
    return n;
  }

  bool is_zero() const {
    for (std::uint64_t w : bits_)
      if (w) return false;
    return true;
  }

  BitMatrix& operator^=(const BitMatrix& o) {
    if (o.rows_ != rows_ || o.cols_ != cols_)
      throw std::invalid_argument("BitMatrix dimension mismatch");
    for (std::size_t w = 0; w < bits_.size(); ++w) bits_[w] ^= o.bits_[w];
    return *this;
  }

  friend BitMatrix operator^(BitMatrix a, const BitMatrix& b) {
    a ^= b;
    return a;
  }

  BitMatrix transposed() const {
    BitMatrix t(cols_, rows_);
    std::uint64_t block[64];
    for (std::size_t bi = 0; bi < rows_; bi += 64) {
      const std::size_t nrows = std::min<std::size_t>(64, rows_ - bi);
      for (std::size_t bw = 0; bw < stride_; ++bw) {
        for (std::size_t r = 0; r < nrows; ++r)
          block[r] = bits_[(bi + r) * stride_ + bw];
        for (std::size_t r = nrows; r < 64; ++r) block[r] = 0;
        detail::transpose64(block);
        const std::size_t out_word = bi >> 6;
        const std::size_t ncols = std::min<std::size_t>(64, cols_ - bw * 64);
        for (std::size_t c = 0; c < ncols; ++c)
          t.bits_[(bw * 64 + c) * t.stride_ + out_word] = block[c];
      }
    }
    return t;
  }

  // C = A * B over GF(2); entry (i,j) is the parity of <row_i(A), col_j(B)>.
  friend BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols_ != b.rows_)
      throw std::invalid_argument("BitMatrix product dimension mismatch");
    const BitMatrix bt = b.transposed();
    BitMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      const std::uint64_t* ar = a.bits_.data() + i * a.stride_;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const std::uint64_t* br = bt.bits_.data() + j * bt.stride_;
        std::uint64_t acc = 0;
        for (std::size_t w = 0; w < a.stride_; ++w) acc ^= ar[w] & br[w];
        if (std::popcount(acc) & 1u) c.set(i, j, 1);
      }
    }
    return c;
  }

  // packed row-major bytes, each row padded to a byte boundary, MSB first
  std::vector<std::uint8_t> to_packed_bytes() const {
    const std::size_t row_bytes = (cols_ + 7) / 8;
    std::vector<std::uint8_t> out(rows_ * row_bytes);
    for (std::size_t i = 0; i < rows_; ++i) {
      const std::uint64_t* rw = bits_.data() + i * stride_;
      for (std::size_t b = 0; b < row_bytes; ++b)
        out[i * row_bytes + b] =
            static_cast<std::uint8_t>(rw[b >> 3] >> (56 - 8 * (b & 7)));
    }
    return out;
  }

  static BitMatrix from_packed_bytes(std::span<const std::uint8_t> bytes,
                                     std::size_t rows, std::size_t cols) {
    const std::size_t row_bytes = (cols + 7) / 8;
    if (bytes.size() != rows * row_bytes)
      throw std::invalid_argument("packed matrix size mismatch");
    BitMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      std::uint64_t* rw = m.bits_.data() + i * m.stride_;
      for (std::size_t b = 0; b < row_bytes; ++b)
        rw[b >> 3] |= static_cast<std::uint64_t>(bytes[i * row_bytes + b])
                      << (56 - 8 * (b & 7));
      if (cols & 63) rw[m.stride_ - 1] &= ~0ULL << (64 - (cols & 63));
    }
    return m;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> bits_;
};

// y = A * x over GF(2)
inline BitVec matvec(const BitMatrix& a, const BitVec& x) {
  if (a.cols() != x.size())
    throw std::invalid_argument("matvec dimension mismatch");
  BitVec y(a.rows());
  auto xw = x.words();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto rw = a.row_words(i);
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < rw.size(); ++w) acc ^= rw[w] & xw[w];
    if (std::popcount(acc) & 1u) y.set(i, 1);
  }
  return y;
}

// rank-1 product u * v^T
inline BitMatrix outer_product(const BitVec& u, const BitVec& v) {
  BitMatrix m(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u.get(i)) m.set_row(i, v);
  return m;
}

namespace detail {

// Incremental GF(2) span tracker: vectors indexed by their leading bit.
class GaussBasis {
 public:
  explicit GaussBasis(std::size_t width) : by_lead_(width) {}

  // Reduces v against the basis; if independent, stores the remainder and
  // returns true.
  bool insert(BitVec v) {
    while (!v.is_zero()) {
      const std::size_t l = v.leading();
      if (by_lead_[l].empty()) {
        by_lead_[l] = std::move(v);
        ++rank_;
        return true;
      }
      v ^= by_lead_[l];
    }
    return false;
  }

  std::size_t rank() const { return rank_; }

 private:
  std::vector<BitVec> by_lead_;
  std::size_t rank_ = 0;
};

}  // namespace detail

// GF(2) rank by Gaussian elimination over the shorter axis.
inline std::size_t rank(const BitMatrix& m) {
  const std::size_t limit = std::min(m.rows(), m.cols());
  if (m.cols() <= m.rows()) {
    detail::GaussBasis basis(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
      basis.insert(m.row(i));
      if (basis.rank() == limit) break;
    }
    return basis.rank();
  }
  detail::GaussBasis basis(m.rows());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    basis.insert(m.column(j));
    if (basis.rank() == limit) break;
  }
  return basis.rank();
}

}  // namespace dccd
