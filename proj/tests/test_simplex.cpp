#include <doctest.h>

#include <stdexcept>

#include "linalg.hpp"
#include "simplex.hpp"

using namespace dca;

namespace {

// Appends one slack column per row so that a x <= b becomes an equality
// system; the original variables keep their indices.
LpProblem with_slacks(const RatMat& a, const RatVec& b, const RatVec& c) {
  LpProblem p;
  std::size_t rows = a.size(), cols = c.size();
  p.a.assign(rows, RatVec(cols + rows, Rat(0)));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) p.a[i][j] = a[i][j];
    p.a[i][cols + i] = 1;
  }
  p.b = b;
  p.c = c;
  p.c.resize(cols + rows, Rat(0));
  return p;
}

}  // namespace

TEST_CASE("solver finds the exact optimum of a small program") {
  // minimize -x1 - 2 x2 over x1 + x2 <= 3, x2 <= 2, x >= 0.
  LpProblem p = with_slacks({{1, 1}, {0, 1}}, {3, 2}, {-1, -2});
  LpResult r = solve_lp(p);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.objective == Rat(-5));
  CHECK(r.x[0] == Rat(1));
  CHECK(r.x[1] == Rat(2));
}

TEST_CASE("solver handles fractional data without drift") {
  // minimize x1/3 + x2 over x1/2 + x2/5 = 1, x >= 0.
  LpProblem p;
  p.a = {{Rat(1, 2), Rat(1, 5)}};
  p.b = {1};
  p.c = {Rat(1, 3), Rat(1)};
  LpResult r = solve_lp(p);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.objective == Rat(2, 3));
  CHECK(r.x[0] == Rat(2));
  CHECK(r.x[1] == Rat(0));
}

TEST_CASE("bland pivoting survives a classic degenerate program") {
  LpProblem p = with_slacks({{Rat(1, 4), Rat(-60), Rat(-1, 25), Rat(9)},
                             {Rat(1, 2), Rat(-90), Rat(-1, 50), Rat(3)},
                             {Rat(0), Rat(0), Rat(1), Rat(0)}},
                            {0, 0, 1},
                            {Rat(-3, 4), Rat(150), Rat(-1, 50), Rat(6)});
  LpResult r = solve_lp(p);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.objective == Rat(-1, 20));
}

TEST_CASE("zero right hand side admits the origin") {
  LpProblem p;
  p.a = {{1, -1}};
  p.b = {0};
  p.c = {1, 1};
  LpResult r = solve_lp(p);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.objective == Rat(0));
}

TEST_CASE("infeasible program yields a checkable farkas vector") {
  // x1 + x2 = 1 and x1 + x2 = 3 cannot both hold.
  LpProblem p;
  p.a = {{1, 1}, {1, 1}};
  p.b = {1, 3};
  p.c = {0, 0};
  LpResult r = solve_lp(p);
  REQUIRE(r.status == LpStatus::kInfeasible);
  REQUIRE(r.farkas.size() == 2);
  Rat yb = r.farkas[0] * p.b[0] + r.farkas[1] * p.b[1];
  CHECK(yb > 0);
  for (std::size_t j = 0; j < 2; ++j) {
    Rat ya = r.farkas[0] * p.a[0][j] + r.farkas[1] * p.a[1][j];
    CHECK(ya <= 0);
  }
}

TEST_CASE("negative right hand side alone is not infeasible") {
  // -x1 = -2 is feasible at x1 = 2 even though b < 0.
  LpProblem p;
  p.a = {{-1}};
  p.b = {-2};
  p.c = {1};
  LpResult r = solve_lp(p);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.x[0] == Rat(2));
}

TEST_CASE("square linear solves detect inconsistent and singular systems") {
  // Unique solution.
  auto x = solve_square({{2, 1}, {1, -1}}, {3, 0});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == Rat(1));
  CHECK((*x)[1] == Rat(1));
  // Singular but consistent: underdetermined, rejected.
  CHECK(!solve_square({{1, 1}, {2, 2}}, {1, 2}).has_value());
  // Singular and inconsistent: no pivot column may come from the
  // constant side.
  CHECK(!solve_square({{1, 1}, {1, 1}}, {0, 1}).has_value());
  CHECK(!solve_square({{1, -1, 1}, {0, 0, -1}, {0, 0, 1}}, {0, 0, 1}).has_value());
  CHECK_THROWS_AS(solve_square({{1, 1}}, {1}), std::invalid_argument);
}

TEST_CASE("rref reports rank and pivot columns") {
  RatMat m = {{0, 2, 4}, {1, 1, 1}};
  std::vector<int> pivots;
  int rank = rref_in_place(m, &pivots);
  CHECK(rank == 2);
  CHECK(pivots == std::vector<int>{0, 1});
  RatMat z = {{0, 0}, {0, 0}};
  CHECK(rref_in_place(z, &pivots) == 0);
  CHECK(pivots.empty());
}

TEST_CASE("nullspace spans the kernel") {
  RatMat m = {{1, 1, 0}, {0, 0, 1}};
  RatMat basis = nullspace(m, 3);
  REQUIRE(basis.size() == 1);
  for (const auto& row : m) CHECK(dot(row, basis[0]) == Rat(0));
  CHECK(basis[0] != RatVec(3, Rat(0)));
}
