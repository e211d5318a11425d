#include "linalg.hpp"

#include <stdexcept>

namespace dca {

Rat dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

int rref_in_place(RatMat& m, std::vector<int>* pivot_cols) {
  if (pivot_cols) pivot_cols->clear();
  if (m.empty()) return 0;
  std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rat inv = 1 / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat factor = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= factor * m[r][j];
    }
    if (pivot_cols) pivot_cols->push_back((int)c);
    ++r;
  }
  return (int)r;
}

RatMat nullspace(const RatMat& m, int cols) {
  RatMat a = m;
  if (a.empty()) a.emplace_back((std::size_t)cols, Rat(0));
  std::vector<int> pivots;
  rref_in_place(a, &pivots);
  std::vector<bool> is_pivot((std::size_t)cols, false);
  for (int c : pivots) is_pivot[(std::size_t)c] = true;
  RatMat basis;
  for (int fc = 0; fc < cols; ++fc) {
    if (is_pivot[(std::size_t)fc]) continue;
    RatVec v((std::size_t)cols, Rat(0));
    v[(std::size_t)fc] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[(std::size_t)pivots[r]] = -a[r][(std::size_t)fc];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RatVec> solve_square(RatMat a, RatVec b) {
  std::size_t n = a.size();
  if (n == 0 || b.size() != n) throw std::invalid_argument("solve_square: bad shape");
  for (const auto& row : a)
    if (row.size() != n) throw std::invalid_argument("solve_square: not square");
  for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
  std::vector<int> pivots;
  int rank = rref_in_place(a, &pivots);
  // A pivot in the constant column means the system is inconsistent.
  if (rank < (int)n || pivots.back() >= (int)n) return std::nullopt;
  RatVec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
  return x;
}

}  // namespace dca
