#pragma once

#include <optional>
#include <vector>

#include "rational.hpp"

namespace dca {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

Rat dot(const RatVec& a, const RatVec& b);

// Reduced row echelon form in place; returns the rank and, when requested,
// the pivot column indices in order.
int rref_in_place(RatMat& m, std::vector<int>* pivot_cols = nullptr);

// Basis of {x : m x = 0}; each basis vector has a unit free coordinate.
RatMat nullspace(const RatMat& m, int cols);

// Unique solution of a square system, or nullopt when singular.
std::optional<RatVec> solve_square(RatMat a, RatVec b);

}  // namespace dca
