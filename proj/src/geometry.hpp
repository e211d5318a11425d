#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lattice.hpp"
#include "linalg.hpp"

namespace dca {

// Exhaustive geometry on convex hulls of small lattice sets. Everything here
// enumerates or solves exactly; the price is a hard dimension limit, enforced
// by every entry point.
inline constexpr int kMaxGeometryDim = 8;

void require_geometry_dim(int dim);

// Convex combination of lattice points witnessing a hull membership.
struct ConvexCombination {
  RationalPoint target;
  std::vector<std::pair<LatticePoint, Rat>> support;  // weights > 0

  // True when weights are positive, sum to 1, and average to the target.
  bool valid() const;
  // Sum of weight * f(point); +infinity if any support point is outside
  // dom f.
  Ext weighted_value(const DiscreteFunction& f) const;
  // Caratheodory step: rewrites the combination onto at most dim+1
  // affinely independent support points.
  void reduce();
};

// Halfspace <normal, z> <= offset with integer gcd-reduced normal.
struct Halfspace {
  RatVec normal;
  Rat offset;

  static Halfspace canonicalized(RatVec normal, Rat offset);
  bool contains(const RationalPoint& z) const;
  bool strictly_excludes(const RationalPoint& z) const;
  bool operator<(const Halfspace& other) const;
  bool operator==(const Halfspace& other) const;
};

// Outcome of a hull membership test: exactly one certificate is present.
struct HullMembership {
  std::optional<ConvexCombination> combination;  // x in conv(V)
  std::optional<Halfspace> separator;            // all of V on one side, x outside

  bool inside() const { return combination.has_value(); }
};

// Decides x in conv(V) by one exact feasibility LP. pre: V nonempty.
HullMembership hull_membership(const RationalPoint& x, const LatticeSet& v);

// Value of an extension/envelope together with an attaining combination.
struct EnvelopeValue {
  Ext value;
  std::optional<ConvexCombination> combination;  // absent iff value is +inf
};

// Minimum of sum lambda_y f(y) over convex combinations of the integral
// neighborhood of x that average to x. pre: x inside the table box.
EnvelopeValue local_convex_extension(const DiscreteFunction& f,
                                     const RationalPoint& x);

// Same minimization over all of dom f: the convex envelope of the table,
// +infinity outside conv(dom f).
EnvelopeValue convex_envelope_value(const DiscreteFunction& f,
                                    const RationalPoint& x);

// H-representation of conv(S): facet inequalities plus the affine-hull
// equalities needed when the hull is not full-dimensional.
struct HullDescription {
  std::vector<Halfspace> facets;
  std::vector<std::pair<RatVec, Rat>> equalities;  // <e, z> = r
};

HullDescription hull_description(const LatticeSet& s);

// Vertices of conv(S) intersected with the unit cell [cell_lo, cell_lo+1],
// found by enumerating square subsystems of the combined constraint list.
// Sorted lexicographically; empty when the intersection is empty.
std::vector<RationalPoint> cell_intersection_vertices(const HullDescription& desc,
                                                      const LatticePoint& cell_lo);

// First vertex of conv(S) within the cell that is not in conv(S into cell),
// scanning vertices in lexicographic order; absence means the two regions
// agree on this cell.
std::optional<RationalPoint> cell_hull_equality(const LatticeSet& s,
                                                const LatticePoint& cell_lo);
std::optional<RationalPoint> cell_hull_equality(const LatticeSet& s,
                                                const HullDescription& desc,
                                                const LatticePoint& cell_lo);

// True when conv(S) meets the unit cell at cell_lo; one feasibility LP.
bool hull_meets_cell(const LatticeSet& s, const LatticePoint& cell_lo);

// Internal entry point shared by the extension and envelope: minimize the
// table over convex combinations of an explicit candidate list. Exposed so
// order-invariance can be tested directly.
EnvelopeValue minimize_over_combinations(const DiscreteFunction& f,
                                         const std::vector<LatticePoint>& candidates,
                                         const RationalPoint& x);

}  // namespace dca
