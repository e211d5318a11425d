#pragma once

#include <optional>
#include <vector>

#include "geometry.hpp"
#include "lattice.hpp"

namespace dca {

// Coordinate projections keep an ordered subset of axes and minimize (for
// functions) over the dropped ones.
LatticeSet project_set(const LatticeSet& s, const std::vector<int>& keep);
DiscreteFunction project_fn(const DiscreteFunction& f, const std::vector<int>& keep);

LatticeSet minkowski_sum(const LatticeSet& a, const LatticeSet& b);

// Infimal convolution (f g)(x) = min { f(y) + g(z) : y + z = x } over the
// sum of the two effective-domain bounding boxes, by the direct double
// loop over both domains.
DiscreteFunction convolve(const DiscreteFunction& f, const DiscreteFunction& g);

// Discrete Legendre transform max { <p, x> - f(x) : x in dom f } tabulated
// on an explicit integer price box.
DiscreteFunction conjugate(const DiscreteFunction& f, const IntegerBox& price_box);

enum class PenaltyKind { kL1, kSquaredL2 };

// weight * distance(x, S) tabulated on the box.
DiscreteFunction penalty_distance(const LatticeSet& s, PenaltyKind kind,
                                  const Rat& weight, const IntegerBox& box);

struct PenaltyExtension {
  DiscreteFunction extension;
  // Least weight at which the extension restricted to dom f returns f
  // itself; at or above it the construction only adds new points.
  Rat threshold;
};

// min { f(y) + weight * distance(x, y) : y in dom f } on the box, which
// must contain dom f.
PenaltyExtension extend_with_penalty(const DiscreteFunction& f, PenaltyKind kind,
                                     const Rat& weight, const IntegerBox& box);

// Pointwise sum on the box intersection; the boxes must overlap and some
// point must stay finite.
DiscreteFunction add_functions(const DiscreteFunction& f, const DiscreteFunction& g);

struct MinimizationResult {
  LatticePoint argmin;
  Rat value;
};

// Global minimum via repeated single-coordinate projection followed by
// back-substitution; deterministic (smallest coordinate wins ties).
MinimizationResult minimize_via_projection(const DiscreteFunction& f);

// Interval [lo, hi] on a single axis, as a Minkowski summand.
struct SegmentBox {
  int axis = 0;
  Coord lo = 0;
  Coord hi = 0;
};

LatticeSet segment_points(const SegmentBox& b, int dim);

// Certificate that a rational point belongs to the hull of its own
// integral neighborhood within S + B. kOutsideHull and kPreconditionFailed
// carry the separating halfspace and the uncovered hull point of S.
struct SumCertificate {
  enum class Status { kCertified, kOutsideHull, kPreconditionFailed };
  Status status = Status::kOutsideHull;
  std::optional<ConvexCombination> combination;
  std::optional<Halfspace> separator;
  std::optional<RationalPoint> hole;
};

// Splits x over conv(S) plus a segment offset, then rebuilds a local
// combination inside (S + B) restricted to the neighborhood of x. S must
// be integrally convex; a failure at the split point is reported in the
// certificate, never asserted.
SumCertificate segment_sum_certificate(const LatticeSet& s, const SegmentBox& b,
                                       const RationalPoint& x);

// Same certificate for a full box summand, chaining one segment per axis.
SumCertificate box_sum_certificate(const LatticeSet& s, const IntegerBox& b,
                                   const RationalPoint& x);

}  // namespace dca
