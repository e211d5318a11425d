#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <variant>
#include <vector>

#include "rational.hpp"

namespace dca {

using Coord = std::int64_t;
using LatticePoint = std::vector<Coord>;
using RationalPoint = std::vector<Rat>;

RationalPoint to_rational(const LatticePoint& x);
// Exact conversion; throws std::invalid_argument on fractional coordinates.
LatticePoint to_lattice(const RationalPoint& x);
Coord chebyshev_distance(const LatticePoint& x, const LatticePoint& y);

// Axis-aligned box [lo, hi] of lattice points, lo <= hi componentwise.
class IntegerBox {
 public:
  IntegerBox(LatticePoint lo, LatticePoint hi);

  int dim() const { return (int)lo_.size(); }
  const LatticePoint& lo() const { return lo_; }
  const LatticePoint& hi() const { return hi_; }
  std::uint64_t size() const;
  bool contains(const LatticePoint& x) const;
  bool contains(const RationalPoint& x) const;

  // Row-major position of x; pre: contains(x).
  std::uint64_t index_of(const LatticePoint& x) const;
  LatticePoint point_at(std::uint64_t index) const;
  void for_each(const std::function<void(const LatticePoint&)>& fn) const;

  bool operator==(const IntegerBox& other) const {
    return lo_ == other.lo_ && hi_ == other.hi_;
  }

 private:
  LatticePoint lo_, hi_;
};

// Finite set of lattice points, kept sorted lexicographically and unique.
class LatticeSet {
 public:
  explicit LatticeSet(int dim);
  LatticeSet(int dim, std::vector<LatticePoint> points);

  int dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<LatticePoint>& points() const { return points_; }
  bool contains(const LatticePoint& x) const;
  void insert(LatticePoint x);

  // Tight bounding box; pre: nonempty.
  IntegerBox bounding_box() const;

  bool operator==(const LatticeSet& other) const {
    return dim_ == other.dim_ && points_ == other.points_;
  }

 private:
  int dim_;
  std::vector<LatticePoint> points_;  // sorted, no duplicates
};

// Function on a box of lattice points with values in Q union {+inf},
// stored as a dense row-major table. Points outside the box read as
// +infinity. The effective domain (finite values) must be nonempty.
class DiscreteFunction {
 public:
  DiscreteFunction(IntegerBox box, std::vector<Ext> values);

  static DiscreteFunction constant(const IntegerBox& box, const Rat& value);
  // 0 on the set, +infinity elsewhere; pre: box contains the set.
  static DiscreteFunction indicator(const LatticeSet& set, const IntegerBox& box);

  int dim() const { return box_.dim(); }
  const IntegerBox& box() const { return box_; }
  const std::vector<Ext>& values() const { return values_; }
  Ext at(const LatticePoint& x) const;
  void set(const LatticePoint& x, Ext v);

  LatticeSet domain() const;
  std::uint64_t domain_size() const;

  bool operator==(const DiscreteFunction& other) const {
    return box_ == other.box_ && values_ == other.values_;
  }

 private:
  IntegerBox box_;
  std::vector<Ext> values_;
};

// Difference y - x written as a sum of steps 1_A - 1_B over m levels,
// m = chebyshev distance. Level k (1-based in the usual notation, slot
// k-1 here) raises the coordinates in raise[k] by one and lowers those
// in lower[k] by one; raise sets grow along k while lower sets shrink.
// Coordinate indices are 0-based.
struct StepDecomposition {
  Coord m = 0;
  std::vector<std::vector<int>> raise;
  std::vector<std::vector<int>> lower;

  // Recombines x + sum of steps; used to confirm the decomposition.
  LatticePoint apply(const LatticePoint& x) const;
  // The partial step for a subset of levels (0-based), as a displacement.
  LatticePoint partial(int dim, const std::vector<int>& levels) const;
};

// Lattice points within the unit cell around a rational point: every z with
// floor(x) <= z <= ceil(x) componentwise.
LatticeSet integral_neighborhood(const RationalPoint& x);

// (ceil((x+y)/2), floor((x+y)/2)), rounding componentwise.
std::pair<LatticePoint, LatticePoint> rounded_midpoints(const LatticePoint& x,
                                                        const LatticePoint& y);

StepDecomposition decompose_difference(const LatticePoint& x,
                                       const LatticePoint& y);

// Closed family of elementary function rewrites. Each produces a new table;
// preconditions are validated and reported via std::invalid_argument.
struct ShiftDomain {
  LatticePoint offset;  // g(x) = f(x + offset)
};
struct NegateVariables {};  // g(x) = f(-x)
struct ScaleValues {
  Rat factor;  // g = factor * f, factor >= 0; +inf stays +inf
};
struct SubtractLinear {
  std::vector<Rat> price;  // g(x) = f(x) - <price, x>
};
struct ScaleDomain {
  Coord factor;  // g(x) = f(factor * x), factor >= 1
};
struct RestrictCoordinates {
  std::vector<int> keep;  // dropped coordinates are fixed at 0
};
using BasicTransform =
    std::variant<ShiftDomain, NegateVariables, ScaleValues, SubtractLinear,
                 ScaleDomain, RestrictCoordinates>;

DiscreteFunction basic_transform(const DiscreteFunction& f,
                                 const BasicTransform& t);

}  // namespace dca
