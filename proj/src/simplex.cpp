#include "simplex.hpp"

#include <stdexcept>

namespace dca {

namespace {

// Dense tableau: rows carry [real columns | artificial columns | rhs].
// reduced[] is the objective row in the same layout, with -objective in
// the rhs slot. basis[i] is the column basic in row i.
struct Tableau {
  RatMat rows;
  RatVec reduced;
  std::vector<int> basis;
  std::size_t n_real = 0;

  std::size_t width() const { return reduced.size(); }
  std::size_t rhs_col() const { return width() - 1; }

  void pivot(std::size_t r, std::size_t c) {
    Rat inv = 1 / rows[r][c];
    for (Rat& v : rows[r]) v *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rat f = rows[i][c];
      for (std::size_t j = 0; j < width(); ++j) rows[i][j] -= f * rows[r][j];
    }
    if (reduced[c] != 0) {
      Rat f = reduced[c];
      for (std::size_t j = 0; j < width(); ++j) reduced[j] -= f * rows[r][j];
    }
    basis[r] = (int)c;
  }

  // Bland's rule over the real columns. Returns false at optimality;
  // throws on an unbounded ray (callers pose bounded problems).
  bool step() {
    std::size_t enter = width();
    for (std::size_t j = 0; j < n_real; ++j) {
      if (reduced[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == width()) return false;
    std::size_t leave = rows.size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i][enter] <= 0) continue;
      if (leave == rows.size()) {
        leave = i;
        continue;
      }
      Rat cur = rows[leave][rhs_col()] / rows[leave][enter];
      Rat cand = rows[i][rhs_col()] / rows[i][enter];
      if (cand < cur || (cand == cur && basis[i] < basis[leave])) leave = i;
    }
    if (leave == rows.size())
      throw std::runtime_error("simplex: unbounded objective");
    pivot(leave, enter);
    return true;
  }

  void install_costs(const RatVec& costs) {
    reduced.assign(width(), Rat(0));
    for (std::size_t j = 0; j < costs.size(); ++j) reduced[j] = costs[j];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      Rat cb = (std::size_t)basis[i] < costs.size() ? costs[(std::size_t)basis[i]] : Rat(0);
      if (cb == 0) continue;
      for (std::size_t j = 0; j < width(); ++j) reduced[j] -= cb * rows[i][j];
    }
  }
};

}  // namespace

LpResult solve_lp(const LpProblem& p) {
  std::size_t m = p.a.size();
  if (m == 0) throw std::invalid_argument("solve_lp: no constraints");
  std::size_t n = p.a[0].size();
  for (const auto& row : p.a)
    if (row.size() != n) throw std::invalid_argument("solve_lp: ragged matrix");
  if (p.b.size() != m || p.c.size() != n)
    throw std::invalid_argument("solve_lp: shape mismatch");

  Tableau t;
  t.n_real = n;
  t.rows.assign(m, RatVec(n + m + 1, Rat(0)));
  std::vector<int> flip(m, 1);
  for (std::size_t i = 0; i < m; ++i) {
    int s = p.b[i] < 0 ? -1 : 1;
    flip[i] = s;
    for (std::size_t j = 0; j < n; ++j) t.rows[i][j] = s * p.a[i][j];
    t.rows[i][n + i] = 1;
    t.rows[i][n + m] = s * p.b[i];
    t.basis.push_back((int)(n + i));
  }

  // Phase 1: minimize the sum of artificials.
  RatVec phase1(n + m, Rat(0));
  for (std::size_t i = 0; i < m; ++i) phase1[n + i] = 1;
  t.reduced.assign(n + m + 1, Rat(0));
  t.install_costs(phase1);
  while (t.step()) {
  }

  Rat infeas = -t.reduced[t.rhs_col()];
  LpResult result;
  if (infeas > 0) {
    // Dual prices certify infeasibility; the artificial column for row i
    // has reduced cost 1 - y_i, so y can be read off directly.
    result.status = LpStatus::kInfeasible;
    result.farkas.resize(m);
    for (std::size_t i = 0; i < m; ++i)
      result.farkas[i] = flip[i] * (1 - t.reduced[n + i]);
    return result;
  }

  // Remove artificials from the basis; a row with no real pivot left is a
  // redundant constraint and is dropped.
  for (std::size_t i = t.rows.size(); i-- > 0;) {
    if ((std::size_t)t.basis[i] < n) continue;
    std::size_t col = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (t.rows[i][j] != 0) {
        col = j;
        break;
      }
    }
    if (col < n) {
      t.pivot(i, col);
    } else {
      t.rows.erase(t.rows.begin() + (long)i);
      t.basis.erase(t.basis.begin() + (long)i);
    }
  }

  t.install_costs(p.c);
  while (t.step()) {
  }

  result.status = LpStatus::kOptimal;
  result.x.assign(n, Rat(0));
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    if ((std::size_t)t.basis[i] < n) result.x[(std::size_t)t.basis[i]] = t.rows[i][t.rhs_col()];
  result.objective = dot(result.x, p.c);
  return result;
}

}  // namespace dca
