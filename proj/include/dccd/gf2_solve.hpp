#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dccd/bit_matrix.hpp"
#include "dccd/bit_vec.hpp"

namespace dccd {

// Factors a parity matrix H (k x n) for repeated syndrome solving.
//
// Columns are swept left to right; the first k linearly independent ones
// become the pivot columns, matching Gaussian elimination with partial
// pivoting. solve() returns the unique solution supported on the pivot
// columns (free variables zero), so weight(e) <= k.
class SyndromeSolver {
 public:
  explicit SyndromeSolver(const BitMatrix& h, bool require_full_rank = true)
      : k_(h.rows()), n_(h.cols()), basis_(k_), coeff_(k_) {
    for (std::size_t j = 0; j < n_ && rank_ < k_; ++j) {
      BitVec v = h.column(j);
      BitVec cf(k_);
      while (!v.is_zero()) {
        const std::size_t l = v.leading();
        if (basis_[l].empty()) {
          cf.set(rank_, 1);
          basis_[l] = std::move(v);
          coeff_[l] = std::move(cf);
          pivots_.push_back(j);
          ++rank_;
          break;
        }
        v ^= basis_[l];
        cf ^= coeff_[l];
      }
    }
    if (require_full_rank && rank_ < k_)
      throw std::runtime_error("parity matrix is not full row rank");
  }

  std::size_t k() const { return k_; }
  std::size_t n() const { return n_; }
  std::size_t rank() const { return rank_; }
  const std::vector<std::size_t>& pivot_columns() const { return pivots_; }

  // e with H e = s; throws if s is outside the column space.
  BitVec solve(const BitVec& s) const {
    if (s.size() != k_) throw std::invalid_argument("syndrome length mismatch");
    BitVec rem = s;
    BitVec x(k_);
    while (!rem.is_zero()) {
      const std::size_t l = rem.leading();
      if (basis_[l].empty())
        throw std::runtime_error("syndrome system infeasible");
      rem ^= basis_[l];
      x ^= coeff_[l];
    }
    BitVec e(n_);
    for (std::size_t t = 0; t < rank_; ++t)
      if (x.get(t)) e.set(pivots_[t], 1);
    return e;
  }

 private:
  std::size_t k_;
  std::size_t n_;
  std::size_t rank_ = 0;
  std::vector<std::size_t> pivots_;
  std::vector<BitVec> basis_;  // indexed by leading bit
  std::vector<BitVec> coeff_;  // combination over pivot slots
};

namespace detail {

inline constexpr std::size_t kMinimizeMaxCols = 24;

// Dense Gauss-Jordan for n <= 64 columns (any row count); each row is one
// word. Returns e (bit c of the result word = column c, LSB-indexed).
// Scratch buffers are thread_local: tiny solves dominate the oracle-style
// exhaustive sweeps, and reallocation would swamp the arithmetic.
inline BitVec solve_small(const BitMatrix& h, const BitVec& s, bool minimize) {
  const std::size_t k = h.rows(), n = h.cols();
  thread_local std::vector<std::uint64_t> rows;
  thread_local std::vector<std::uint8_t> used;
  thread_local std::vector<std::pair<std::size_t, std::size_t>> piv;
  thread_local std::vector<std::size_t> free_cols;
  thread_local BitVec syn;
  rows.resize(k);
  for (std::size_t i = 0; i < k; ++i) rows[i] = h.row_words(i)[0];
  syn = s;

  used.assign(k, 0);
  piv.clear();
  free_cols.clear();
  for (std::size_t c = 0; c < n; ++c) {
    const std::uint64_t mask = 1ULL << (63 - c);
    std::size_t r = k;
    for (std::size_t i = 0; i < k; ++i)
      if (!used[i] && (rows[i] & mask)) {
        r = i;
        break;
      }
    if (r == k) {
      free_cols.push_back(c);
      continue;
    }
    used[r] = 1;
    piv.emplace_back(r, c);
    for (std::size_t i = 0; i < k; ++i)
      if (i != r && (rows[i] & mask)) {
        rows[i] ^= rows[r];
        if (syn.get(r)) syn.flip(i);
      }
  }
  for (std::size_t i = 0; i < k; ++i)
    if (!used[i] && syn.get(i))
      throw std::runtime_error("syndrome system infeasible");

  std::uint64_t e0 = 0;  // bit c (LSB-indexed) = column c
  for (auto [r, c] : piv)
    if (syn.get(r)) e0 |= 1ULL << c;

  std::uint64_t best = e0;
  if (minimize && !free_cols.empty()) {
    thread_local std::vector<std::uint64_t> null_basis;
    null_basis.clear();
    for (std::size_t f : free_cols) {
      std::uint64_t v = 1ULL << f;
      for (auto [r, c] : piv)
        if (rows[r] & (1ULL << (63 - f))) v |= 1ULL << c;
      null_basis.push_back(v);
    }
    std::uint64_t cur = e0;
    int best_w = std::popcount(best);
    for (std::uint64_t g = 1; g < (1ULL << null_basis.size()); ++g) {
      cur ^= null_basis[std::countr_zero(g)];  // Gray-code walk
      const int w = std::popcount(cur);
      if (w < best_w) {
        best_w = w;
        best = cur;
      }
    }
  }

  BitVec e(n);
  for (std::size_t c = 0; c < n; ++c)
    if ((best >> c) & 1u) e.set(c, 1);
  return e;
}

}  // namespace detail

// One-shot syndrome solve: He = s over GF(2), free variables zero, so the
// support of e lies in the pivot columns. With minimize set (n <= 24 only)
// the whole coset is searched for a minimum-weight solution.
inline BitVec solve_syndrome(const BitMatrix& h, const BitVec& s,
                             bool minimize = false) {
  if (s.size() != h.rows())
    throw std::invalid_argument("syndrome length mismatch");
  if (minimize && h.cols() > detail::kMinimizeMaxCols)
    throw std::invalid_argument("minimize supported only for n <= 24");
  if (h.cols() <= 64) return detail::solve_small(h, s, minimize);
  SyndromeSolver solver(h, /*require_full_rank=*/false);
  return solver.solve(s);
}

}  // namespace dccd
