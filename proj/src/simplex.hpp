#pragma once

#include <vector>

#include "linalg.hpp"

namespace dca {

// Linear program in standard form: minimize c.x subject to a x = b, x >= 0.
// Solved exactly over the rationals with a dense two-phase tableau and
// Bland's smallest-index pivot rule, so the solver always terminates and
// never pivots on roundoff noise.
struct LpProblem {
  RatMat a;
  RatVec b;
  RatVec c;
};

// Every posed problem has a bounded feasible region (convex-combination
// weights), so the solver reports optimal or infeasible; an unbounded ray
// raises std::runtime_error instead of being a reportable outcome.
enum class LpStatus { kOptimal, kInfeasible };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  RatVec x;        // primal solution when optimal
  Rat objective;   // c.x when optimal
  // When infeasible: y with y.a <= 0 componentwise and y.b > 0, in the
  // row space of the original system. Any x >= 0 with a x = b would give
  // the contradiction 0 >= y.(a x) = y.b > 0.
  RatVec farkas;
};

LpResult solve_lp(const LpProblem& p);

}  // namespace dca
