#include <doctest.h>

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "geometry.hpp"
#include "lattice.hpp"
#include "linalg.hpp"

using namespace dca;

namespace {

LatticeSet planar_hole_sum() {
  return LatticeSet(2, {{1, 0}, {0, 1}, {2, 1}, {1, 2}});
}

// Convolution counterexample sum with a one-dimensional affine hull drop:
// its hull satisfies z1 - z2 + z3 = 0, which regressed vertex enumeration.
LatticeSet skew_plane_set() {
  return LatticeSet(3, {{0, 0, 0}, {0, 1, 1}, {1, 1, 0}, {1, 2, 1}});
}

bool satisfies_description(const HullDescription& d, const RationalPoint& z) {
  for (const Halfspace& f : d.facets)
    if (!f.contains(z)) return false;
  for (const auto& [e, r] : d.equalities)
    if (dot(e, z) != r) return false;
  return true;
}

// Minimum of the table over convex combinations of `candidates` averaging
// to x, by brute force over affinely independent subsets of size at most
// dim + 1. A vertex of the weight polytope has at most dim + 1 positive
// weights on affinely independent points, so scanning exactly the subsets
// with a unique solution reaches the optimum.
Ext enumeration_envelope(const DiscreteFunction& f,
                         const std::vector<LatticePoint>& candidates,
                         const RationalPoint& x) {
  std::size_t n = x.size();
  std::vector<LatticePoint> finite;
  for (const auto& p : candidates)
    if (f.at(p).finite()) finite.push_back(p);
  Ext best = Ext::infinity();
  std::vector<std::size_t> idx;
  auto try_subset = [&]() {
    std::size_t k = idx.size();
    RatMat m(n + 1, RatVec(k + 1, Rat(0)));
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t i = 0; i < n; ++i)
        m[i][j] = Rat((long)finite[idx[j]][i]);
      m[n][j] = 1;
    }
    for (std::size_t i = 0; i < n; ++i) m[i][k] = x[i];
    m[n][k] = 1;
    std::vector<int> pivots;
    int rank = rref_in_place(m, &pivots);
    // Only uniquely solvable subsets matter; a pivot in the last column
    // means the subset cannot reach x at all.
    if (!pivots.empty() && pivots.back() == (int)k) return;
    if (rank != (int)k) return;
    Ext value(0);
    for (std::size_t j = 0; j < k; ++j) {
      Rat w = m[j][k];
      if (w < 0) return;
      value = value + w * f.at(finite[idx[j]]);
    }
    best = std::min(best, value);
  };
  std::function<void(std::size_t)> grow = [&](std::size_t from) {
    if (!idx.empty()) try_subset();
    if (idx.size() == n + 1) return;
    for (std::size_t j = from; j < finite.size(); ++j) {
      idx.push_back(j);
      grow(j + 1);
      idx.pop_back();
    }
  };
  grow(0);
  return best;
}

DiscreteFunction random_sparse_table(std::mt19937_64& rng, const IntegerBox& box) {
  std::uniform_int_distribution<int> val(-4, 4), gap(0, 4);
  std::vector<Ext> vals(box.size());
  for (auto& v : vals)
    v = gap(rng) == 0 ? Ext::infinity() : Ext(Rat(val(rng)));
  if (std::none_of(vals.begin(), vals.end(),
                   [](const Ext& v) { return v.finite(); }))
    vals[0] = Ext(0);
  return DiscreteFunction(box, std::move(vals));
}

}  // namespace

TEST_CASE("hull membership certifies inside points with a valid combination") {
  LatticeSet s = planar_hole_sum();
  HullMembership m = hull_membership({Rat(1), Rat(1)}, s);
  REQUIRE(m.inside());
  CHECK(m.combination->valid());
  CHECK(m.combination->target == RationalPoint{Rat(1), Rat(1)});
  for (const auto& [p, w] : m.combination->support) {
    CHECK(s.contains(p));
    CHECK(w > 0);
  }
}

TEST_CASE("hull membership certifies outside points with a separator") {
  LatticeSet s = planar_hole_sum();
  for (RationalPoint x : {RationalPoint{Rat(0), Rat(0)},
                          RationalPoint{Rat(2), Rat(2)},
                          RationalPoint{Rat(5, 2), Rat(1)}}) {
    HullMembership m = hull_membership(x, s);
    REQUIRE(!m.inside());
    REQUIRE(m.separator.has_value());
    CHECK(m.separator->strictly_excludes(x));
    for (const auto& p : s.points()) CHECK(m.separator->contains(to_rational(p)));
  }
}

TEST_CASE("caratheodory reduction trims the support") {
  LatticeSet s = planar_hole_sum();
  ConvexCombination c;
  c.target = {Rat(1), Rat(1)};
  for (const auto& p : s.points()) c.support.emplace_back(p, Rat(1, 4));
  REQUIRE(c.valid());
  c.reduce();
  CHECK(c.valid());
  CHECK(c.target == RationalPoint{Rat(1), Rat(1)});
  CHECK(c.support.size() <= 3);
}

TEST_CASE("weighted value goes infinite when support leaves the domain") {
  IntegerBox box({0, 0}, {1, 1});
  DiscreteFunction f = DiscreteFunction::constant(box, Rat(2));
  f.set({1, 1}, Ext::infinity());
  ConvexCombination c;
  c.target = {Rat(1, 2), Rat(1, 2)};
  c.support = {{{0, 0}, Rat(1, 2)}, {{1, 1}, Rat(1, 2)}};
  CHECK(c.weighted_value(f) == Ext::infinity());
  c.support = {{{0, 1}, Rat(1, 2)}, {{1, 0}, Rat(1, 2)}};
  CHECK(c.weighted_value(f) == Ext(2));
}

TEST_CASE("hull description matches membership over a sample grid") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 8; ++round) {
    int dim = round < 5 ? 2 : 3;
    IntegerBox box(LatticePoint(dim, 0), LatticePoint(dim, 2));
    std::uniform_int_distribution<std::uint64_t> pick(0, box.size() - 1);
    LatticeSet s(dim);
    for (int i = 0; i < 4; ++i) s.insert(box.point_at(pick(rng)));
    HullDescription d = hull_description(s);
    for (const Halfspace& f : d.facets) {
      // Canonical facets carry gcd-reduced integer normals.
      for (const Rat& c : f.normal) CHECK(is_integral(c));
    }
    IntegerBox probe(LatticePoint(dim, -1), LatticePoint(dim, 3));
    probe.for_each([&](const LatticePoint& z) {
      RationalPoint q = to_rational(z);
      CHECK(satisfies_description(d, q) == hull_membership(q, s).inside());
    });
  }
}

TEST_CASE("known planar hull has the four diamond facets") {
  HullDescription d = hull_description(planar_hole_sum());
  CHECK(d.equalities.empty());
  std::vector<Halfspace> expected = {
      Halfspace::canonicalized({Rat(-1), Rat(-1)}, Rat(-1)),
      Halfspace::canonicalized({Rat(-1), Rat(1)}, Rat(1)),
      Halfspace::canonicalized({Rat(1), Rat(-1)}, Rat(1)),
      Halfspace::canonicalized({Rat(1), Rat(1)}, Rat(3)),
  };
  std::vector<Halfspace> got = d.facets;
  std::sort(got.begin(), got.end());
  std::sort(expected.begin(), expected.end());
  CHECK(got == expected);
}

TEST_CASE("flat hulls report their affine equalities") {
  LatticeSet s = skew_plane_set();
  HullDescription d = hull_description(s);
  REQUIRE(d.equalities.size() == 1);
  const auto& [e, r] = d.equalities[0];
  for (const auto& p : s.points()) CHECK(dot(e, to_rational(p)) == r);
}

TEST_CASE("cell vertices satisfy every constraint including equalities") {
  LatticeSet s = skew_plane_set();
  HullDescription d = hull_description(s);
  std::vector<RationalPoint> verts = cell_intersection_vertices(d, {0, 0, 0});
  std::vector<RationalPoint> expected = {
      {Rat(0), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(1)}, {Rat(1), Rat(1), Rat(0)}};
  CHECK(verts == expected);
  for (const auto& v : verts) {
    CHECK(satisfies_description(d, v));
    CHECK(hull_membership(v, s).inside());
  }
  std::vector<RationalPoint> far = cell_intersection_vertices(d, {0, 1, 0});
  CHECK(far == std::vector<RationalPoint>{{Rat(0), Rat(1), Rat(1)},
                                          {Rat(1), Rat(1), Rat(0)},
                                          {Rat(1), Rat(2), Rat(1)}});
}

TEST_CASE("cell hull comparison finds the planar hole") {
  LatticeSet s = planar_hole_sum();
  std::optional<RationalPoint> hole = cell_hull_equality(s, {0, 0});
  REQUIRE(hole.has_value());
  CHECK(*hole == RationalPoint{Rat(1), Rat(1)});
}

TEST_CASE("cell hull comparison accepts every cell of a convex-complete set") {
  LatticeSet s = skew_plane_set();
  IntegerBox bbox = s.bounding_box();
  LatticePoint hi = bbox.hi();
  for (auto& c : hi) --c;
  IntegerBox(bbox.lo(), hi).for_each([&](const LatticePoint& cell) {
    CHECK(!cell_hull_equality(s, cell).has_value());
  });
}

TEST_CASE("cell hull comparison flags a segment leaving through a cell wall") {
  LatticeSet s(3, {{0, 0, 0}, {1, 2, 1}});
  std::optional<RationalPoint> hole = cell_hull_equality(s, {0, 0, 0});
  REQUIRE(hole.has_value());
  CHECK(*hole == RationalPoint{Rat(1, 2), Rat(1), Rat(1, 2)});
}

TEST_CASE("hull cell intersection test matches the geometry") {
  LatticeSet s = planar_hole_sum();
  CHECK(hull_meets_cell(s, {0, 0}));
  CHECK(hull_meets_cell(s, {1, 1}));
  LatticeSet diag(2, {{0, 0}, {1, 1}});
  CHECK(hull_meets_cell(diag, {0, 0}));
  CHECK(!hull_meets_cell(diag, {5, 5}));
  CHECK(!hull_meets_cell(diag, {0, 2}));
}

TEST_CASE("local extension agrees with the table at lattice points") {
  IntegerBox box({0, 0}, {2, 2});
  std::mt19937_64 rng(11);
  DiscreteFunction f = random_sparse_table(rng, box);
  box.for_each([&](const LatticePoint& z) {
    EnvelopeValue v = local_convex_extension(f, to_rational(z));
    CHECK(v.value == f.at(z));
    if (v.value.finite()) {
      REQUIRE(v.combination.has_value());
      CHECK(v.combination->valid());
    }
  });
}

TEST_CASE("local extension matches subset enumeration on random tables") {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 12; ++round) {
    IntegerBox box({0, 0}, {2, 2});
    DiscreteFunction f = random_sparse_table(rng, box);
    std::uniform_int_distribution<int> num(0, 4);
    for (int probe = 0; probe < 10; ++probe) {
      RationalPoint x{make_ratio(num(rng), 2), make_ratio(num(rng), 2)};
      LatticeSet nbhd = integral_neighborhood(x);
      Ext oracle = enumeration_envelope(f, nbhd.points(), x);
      EnvelopeValue got = local_convex_extension(f, x);
      CHECK(got.value == oracle);
      if (got.value.finite()) {
        REQUIRE(got.combination.has_value());
        CHECK(got.combination->valid());
        CHECK(got.combination->weighted_value(f) == got.value);
        for (const auto& [p, w] : got.combination->support)
          CHECK(nbhd.contains(p));
      }
    }
  }
}

TEST_CASE("envelope matches subset enumeration and detects hull exit") {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 10; ++round) {
    IntegerBox box({0, 0}, {2, 2});
    DiscreteFunction f = random_sparse_table(rng, box);
    std::uniform_int_distribution<int> num(-2, 8);
    for (int probe = 0; probe < 8; ++probe) {
      RationalPoint x{make_ratio(num(rng), 3), make_ratio(num(rng), 3)};
      Ext oracle = enumeration_envelope(f, f.domain().points(), x);
      EnvelopeValue got = convex_envelope_value(f, x);
      CHECK(got.value == oracle);
      CHECK(got.combination.has_value() == got.value.finite());
      if (got.combination) {
        CHECK(got.combination->valid());
        CHECK(got.combination->weighted_value(f) == got.value);
      }
    }
  }
}

TEST_CASE("envelope is infinite outside the hull of the domain") {
  IntegerBox box({0, 0}, {1, 1});
  LatticeSet diag(2, {{0, 0}, {1, 1}});
  DiscreteFunction f = DiscreteFunction::indicator(diag, box);
  EnvelopeValue off = convex_envelope_value(f, {Rat(1), Rat(0)});
  CHECK(off.value == Ext::infinity());
  CHECK(!off.combination.has_value());
  EnvelopeValue on = convex_envelope_value(f, {Rat(1, 2), Rat(1, 2)});
  CHECK(on.value == Ext(0));
}

TEST_CASE("pairwise max table has extension five fourths at the pinned point") {
  // Table of max{p1+p2, p2+p3, p1+p3, p4} on [0,2]^3 x [0,3]; the point
  // (1/2,1/2,1/2,1) lies between (0,0,0,0) and (1,1,1,2) whose values
  // average to 1, yet no local combination reaches below 5/4.
  IntegerBox box({0, 0, 0, 0}, {2, 2, 2, 3});
  std::vector<Ext> vals(box.size());
  box.for_each([&](const LatticePoint& p) {
    Coord m = std::max(std::max(p[0] + p[1], p[1] + p[2]),
                       std::max(p[0] + p[2], p[3]));
    vals[box.index_of(p)] = Ext(Rat((long)m));
  });
  DiscreteFunction g(box, vals);

  RationalPoint mid{Rat(1, 2), Rat(1, 2), Rat(1, 2), Rat(1)};
  EnvelopeValue ext = local_convex_extension(g, mid);
  CHECK(ext.value == Ext(Rat(5, 4)));
  REQUIRE(ext.combination.has_value());
  CHECK(ext.combination->valid());
  CHECK(ext.combination->weighted_value(g) == Ext(Rat(5, 4)));

  // Lower bound: the affine minorant (z1+z2+z3)/2 + z4/2 stays below the
  // table on the whole neighborhood and reads 5/4 at the point, so the
  // extension cannot be smaller.
  LatticeSet nbhd = integral_neighborhood(mid);
  for (const LatticePoint& z : nbhd.points()) {
    Rat h = make_ratio(z[0] + z[1] + z[2], 2) + make_ratio(z[3], 2);
    CHECK(Ext(h) <= g.at(z));
  }
  Rat at_mid = (mid[0] + mid[1] + mid[2]) / 2 + mid[3] / 2;
  CHECK(at_mid == Rat(5, 4));
}

TEST_CASE("combination minimization ignores candidate order") {
  IntegerBox box({0, 0}, {2, 2});
  std::mt19937_64 rng(43);
  DiscreteFunction f = random_sparse_table(rng, box);
  std::vector<LatticePoint> candidates = f.domain().points();
  RationalPoint x{Rat(1), Rat(1)};
  EnvelopeValue base = minimize_over_combinations(f, candidates, x);
  for (int round = 0; round < 5; ++round) {
    std::shuffle(candidates.begin(), candidates.end(), rng);
    EnvelopeValue other = minimize_over_combinations(f, candidates, x);
    CHECK(other.value == base.value);
  }
}

TEST_CASE("geometry entry points enforce the dimension cap") {
  CHECK_NOTHROW(require_geometry_dim(kMaxGeometryDim));
  CHECK_THROWS_AS(require_geometry_dim(kMaxGeometryDim + 1), std::invalid_argument);
}
