#pragma once

#include <random>

#include "classify.hpp"
#include "lattice.hpp"

namespace dca {

// Seeded instance generators for the property suites. Class-guaranteeing
// constructions are used where a known screen exists; anything perturbed
// beyond a screen is re-verified through the exact checker before being
// returned, so every generator output is genuinely in its advertised class.
using Rng = std::mt19937_64;

IntegerBox random_box(Rng& rng, int dim, Coord lo_range, Coord max_width);

// Sum of independent convex one-variable pieces with integer values.
DiscreteFunction random_separable_convex(Rng& rng, const IntegerBox& box);

// Closure of the seeds under adding rounded midpoints; with
// distant_pairs_only the closure rule applies to pairs at Chebyshev
// distance at least two. Stays inside the seed bounding box.
LatticeSet midpoint_closure(LatticeSet seeds, bool distant_pairs_only);

LatticeSet random_lnat_set(Rng& rng, const IntegerBox& box, int seed_count);
LatticeSet random_dmc_set(Rng& rng, const IntegerBox& box, int seed_count);

// Small random subsets filtered through the integral-convexity checker,
// with a closure-based fallback so the generator always terminates.
LatticeSet random_ic_set(Rng& rng, const IntegerBox& box);

DiscreteFunction random_lnat_function(Rng& rng, const IntegerBox& box);

// mode kGlobal or kLocal: midpoint-closed function of that mode, usually a
// perturbed base accepted by the matching checker.
DiscreteFunction random_midpoint_function(Rng& rng, const IntegerBox& box,
                                          FnMidpointMode mode);

DiscreteFunction random_ic_function(Rng& rng, const IntegerBox& box);

// Unstructured table: uniform values with a percentage of +infinity
// entries; at least one entry stays finite.
DiscreteFunction random_table(Rng& rng, const IntegerBox& box, int value_range,
                              int infinite_percent);

}  // namespace dca
