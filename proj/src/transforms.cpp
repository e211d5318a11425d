#include "transforms.hpp"

#include <algorithm>
#include <stdexcept>

#include "simplex.hpp"

namespace dca {

namespace {

void require_keep(const std::vector<int>& keep, int dim) {
  if (keep.empty()) throw std::invalid_argument("projection: keep list is empty");
  for (std::size_t k = 0; k < keep.size(); ++k) {
    if (keep[k] < 0 || keep[k] >= dim)
      throw std::invalid_argument("projection: coordinate index out of range");
    if (k > 0 && keep[k] <= keep[k - 1])
      throw std::invalid_argument("projection: kept coordinates must be strictly increasing");
  }
}

Coord point_distance(const LatticePoint& x, const LatticePoint& y, PenaltyKind kind) {
  Coord d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    Coord step = std::abs(x[i] - y[i]);
    d += kind == PenaltyKind::kL1 ? step : step * step;
  }
  return d;
}

}  // namespace

LatticeSet project_set(const LatticeSet& s, const std::vector<int>& keep) {
  require_keep(keep, s.dim());
  LatticeSet out((int)keep.size());
  for (const LatticePoint& p : s.points()) {
    LatticePoint q;
    q.reserve(keep.size());
    for (int i : keep) q.push_back(p[(std::size_t)i]);
    out.insert(std::move(q));
  }
  return out;
}

DiscreteFunction project_fn(const DiscreteFunction& f, const std::vector<int>& keep) {
  require_keep(keep, f.dim());
  LatticePoint lo, hi;
  for (int i : keep) {
    lo.push_back(f.box().lo()[i]);
    hi.push_back(f.box().hi()[i]);
  }
  IntegerBox box(lo, hi);
  std::vector<Ext> vals(box.size(), Ext::infinity());
  f.box().for_each([&](const LatticePoint& x) {
    Ext v = f.at(x);
    if (!v.finite()) return;
    LatticePoint q;
    q.reserve(keep.size());
    for (int i : keep) q.push_back(x[(std::size_t)i]);
    Ext& slot = vals[box.index_of(q)];
    if (v < slot) slot = v;
  });
  return DiscreteFunction(box, std::move(vals));
}

LatticeSet minkowski_sum(const LatticeSet& a, const LatticeSet& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("minkowski_sum: dimension mismatch");
  LatticeSet out(a.dim());
  for (const LatticePoint& p : a.points())
    for (const LatticePoint& q : b.points()) {
      LatticePoint r(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[i] + q[i];
      out.insert(std::move(r));
    }
  return out;
}

DiscreteFunction convolve(const DiscreteFunction& f, const DiscreteFunction& g) {
  if (f.dim() != g.dim()) throw std::invalid_argument("convolve: dimension mismatch");
  LatticeSet fdom = f.domain(), gdom = g.domain();
  IntegerBox fb = fdom.bounding_box(), gb = gdom.bounding_box();
  LatticePoint lo(f.dim()), hi(f.dim());
  for (int i = 0; i < f.dim(); ++i) {
    lo[i] = fb.lo()[i] + gb.lo()[i];
    hi[i] = fb.hi()[i] + gb.hi()[i];
  }
  IntegerBox box(lo, hi);
  std::vector<Ext> vals(box.size(), Ext::infinity());
  for (const LatticePoint& y : fdom.points())
    for (const LatticePoint& z : gdom.points()) {
      LatticePoint x(y.size());
      for (std::size_t i = 0; i < y.size(); ++i) x[i] = y[i] + z[i];
      Ext v = f.at(y) + g.at(z);
      Ext& slot = vals[box.index_of(x)];
      if (v < slot) slot = v;
    }
  return DiscreteFunction(box, std::move(vals));
}

DiscreteFunction conjugate(const DiscreteFunction& f, const IntegerBox& price_box) {
  if (f.dim() != price_box.dim())
    throw std::invalid_argument("conjugate: dimension mismatch");
  LatticeSet dom = f.domain();
  std::vector<Ext> vals(price_box.size());
  price_box.for_each([&](const LatticePoint& p) {
    bool have = false;
    Rat best = 0;
    for (const LatticePoint& x : dom.points()) {
      Rat v = -f.at(x).value();
      for (std::size_t i = 0; i < p.size(); ++i)
        v += Rat((long)p[i]) * Rat((long)x[i]);
      if (!have || v > best) {
        best = v;
        have = true;
      }
    }
    vals[price_box.index_of(p)] = Ext(best);
  });
  return DiscreteFunction(price_box, std::move(vals));
}

DiscreteFunction penalty_distance(const LatticeSet& s, PenaltyKind kind,
                                  const Rat& weight, const IntegerBox& box) {
  if (s.dim() != box.dim())
    throw std::invalid_argument("penalty_distance: dimension mismatch");
  if (s.empty()) throw std::invalid_argument("penalty_distance: empty set");
  if (weight < 0) throw std::invalid_argument("penalty_distance: negative weight");
  std::vector<Ext> vals(box.size());
  box.for_each([&](const LatticePoint& x) {
    Coord best = point_distance(x, s.points()[0], kind);
    for (const LatticePoint& y : s.points())
      best = std::min(best, point_distance(x, y, kind));
    vals[box.index_of(x)] = Ext(weight * Rat((long)best));
  });
  return DiscreteFunction(box, std::move(vals));
}

PenaltyExtension extend_with_penalty(const DiscreteFunction& f, PenaltyKind kind,
                                     const Rat& weight, const IntegerBox& box) {
  if (f.dim() != box.dim())
    throw std::invalid_argument("extend_with_penalty: dimension mismatch");
  if (weight < 0) throw std::invalid_argument("extend_with_penalty: negative weight");
  LatticeSet dom = f.domain();
  for (const LatticePoint& y : dom.points())
    if (!box.contains(y))
      throw std::invalid_argument("extend_with_penalty: box does not contain dom f");

  std::vector<Ext> vals(box.size());
  box.for_each([&](const LatticePoint& x) {
    bool have = false;
    Rat best = 0;
    for (const LatticePoint& y : dom.points()) {
      Rat v = f.at(y).value() + weight * Rat((long)point_distance(x, y, kind));
      if (!have || v < best) {
        best = v;
        have = true;
      }
    }
    vals[box.index_of(x)] = Ext(best);
  });

  Rat threshold = 0;
  for (const LatticePoint& x : dom.points())
    for (const LatticePoint& y : dom.points()) {
      if (x == y) continue;
      Rat gap = f.at(x).value() - f.at(y).value();
      if (gap <= 0) continue;
      Rat needed = gap / Rat((long)point_distance(x, y, kind));
      threshold = std::max(threshold, needed);
    }
  return PenaltyExtension{DiscreteFunction(box, std::move(vals)), threshold};
}

DiscreteFunction add_functions(const DiscreteFunction& f, const DiscreteFunction& g) {
  if (f.dim() != g.dim())
    throw std::invalid_argument("add_functions: dimension mismatch");
  LatticePoint lo(f.dim()), hi(f.dim());
  for (int i = 0; i < f.dim(); ++i) {
    lo[i] = std::max(f.box().lo()[i], g.box().lo()[i]);
    hi[i] = std::min(f.box().hi()[i], g.box().hi()[i]);
    if (lo[i] > hi[i])
      throw std::invalid_argument("add_functions: boxes do not overlap");
  }
  IntegerBox box(lo, hi);
  std::vector<Ext> vals(box.size());
  bool any_finite = false;
  box.for_each([&](const LatticePoint& x) {
    Ext v = f.at(x) + g.at(x);
    any_finite = any_finite || v.finite();
    vals[box.index_of(x)] = v;
  });
  if (!any_finite)
    throw std::invalid_argument("add_functions: result has empty effective domain");
  return DiscreteFunction(box, std::move(vals));
}

MinimizationResult minimize_via_projection(const DiscreteFunction& f) {
  std::vector<DiscreteFunction> chain;
  chain.push_back(f);
  while (chain.back().dim() > 1) {
    std::vector<int> keep;
    for (int i = 0; i + 1 < chain.back().dim(); ++i) keep.push_back(i);
    chain.push_back(project_fn(chain.back(), keep));
  }

  const DiscreteFunction& line = chain.back();
  bool have = false;
  Rat best = 0;
  Coord best_at = 0;
  line.box().for_each([&](const LatticePoint& x) {
    Ext v = line.at(x);
    if (!v.finite()) return;
    if (!have || v.value() < best) {
      best = v.value();
      best_at = x[0];
      have = true;
    }
  });

  LatticePoint point{best_at};
  for (std::size_t level = chain.size() - 1; level-- > 0;) {
    const DiscreteFunction& g = chain[level];
    int axis = g.dim() - 1;
    bool found = false;
    for (Coord t = g.box().lo()[axis]; t <= g.box().hi()[axis] && !found; ++t) {
      LatticePoint candidate = point;
      candidate.push_back(t);
      Ext v = g.at(candidate);
      if (v.finite() && v.value() == best) {
        point = std::move(candidate);
        found = true;
      }
    }
    if (!found)
      throw std::logic_error("minimize_via_projection: back-substitution failed");
  }
  return MinimizationResult{point, best};
}

LatticeSet segment_points(const SegmentBox& b, int dim) {
  if (b.axis < 0 || b.axis >= dim)
    throw std::invalid_argument("segment: axis out of range");
  if (b.lo > b.hi) throw std::invalid_argument("segment: lo exceeds hi");
  LatticeSet out(dim);
  for (Coord t = b.lo; t <= b.hi; ++t) {
    LatticePoint p((std::size_t)dim, 0);
    p[(std::size_t)b.axis] = t;
    out.insert(std::move(p));
  }
  return out;
}

SumCertificate segment_sum_certificate(const LatticeSet& s, const SegmentBox& b,
                                       const RationalPoint& x) {
  if ((int)x.size() != s.dim())
    throw std::invalid_argument("segment_sum_certificate: dimension mismatch");
  if (s.empty()) throw std::invalid_argument("segment_sum_certificate: empty set");
  require_geometry_dim(s.dim());
  std::size_t axis = (std::size_t)b.axis;
  LatticeSet sum = minkowski_sum(s, segment_points(b, s.dim()));

  SumCertificate cert;
  HullMembership outer = hull_membership(x, sum);
  if (!outer.inside()) {
    cert.status = SumCertificate::Status::kOutsideHull;
    cert.separator = outer.separator;
    return cert;
  }

  // Split x = y + t e_axis with y in conv(S) and t in [lo, hi]: weights
  // over S plus a slack pair for t. Feasible because the hulls add.
  std::size_t k = s.size(), n = x.size();
  LpProblem split;
  split.a.assign(n + 2, RatVec(k + 2, Rat(0)));
  split.b.assign(n + 2, Rat(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j)
      split.a[i][j] = Rat((long)s.points()[j][i]);
    split.b[i] = x[i];
  }
  split.a[axis][k] = 1;  // t - lo
  split.b[axis] -= Rat((long)b.lo);
  for (std::size_t j = 0; j < k; ++j) split.a[n][j] = 1;
  split.b[n] = 1;
  split.a[n + 1][k] = 1;
  split.a[n + 1][k + 1] = 1;
  split.b[n + 1] = Rat((long)(b.hi - b.lo));
  split.c.assign(k + 2, Rat(0));
  LpResult sr = solve_lp(split);
  if (sr.status != LpStatus::kOptimal)
    throw std::logic_error("segment_sum_certificate: split infeasible inside the hull");

  RationalPoint y(n, Rat(0));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < n; ++i)
      y[i] += sr.x[j] * Rat((long)s.points()[j][i]);
  Rat t = Rat((long)b.lo) + sr.x[k];
  Coord zeta = floor_to_int(t);
  Rat beta = t - Rat((long)zeta);

  // Local combination of y inside S; its absence is exactly a hole of S.
  LatticeSet near(s.dim());
  LatticeSet neighborhood = integral_neighborhood(y);
  for (const LatticePoint& z : neighborhood.points())
    if (s.contains(z)) near.insert(z);
  HullMembership local = near.empty()
                             ? HullMembership{}
                             : hull_membership(y, near);
  if (!local.inside()) {
    cert.status = SumCertificate::Status::kPreconditionFailed;
    cert.hole = y;
    return cert;
  }

  // Support sorted by axis coordinate (ascending, ties lexicographic);
  // the leading beta of the weight mass is lifted by zeta + 1 and the
  // rest by zeta, which lands every point in the neighborhood of x.
  std::vector<std::pair<LatticePoint, Rat>> support = local.combination->support;
  std::sort(support.begin(), support.end(),
            [axis](const auto& lhs, const auto& rhs) {
              if (lhs.first[axis] != rhs.first[axis])
                return lhs.first[axis] < rhs.first[axis];
              return lhs.first < rhs.first;
            });

  ConvexCombination comb;
  comb.target = x;
  Rat remaining_high = beta;
  for (const auto& [point, weight] : support) {
    Rat high = std::min(remaining_high, weight);
    Rat low = weight - high;
    remaining_high -= high;
    if (high > 0) {
      LatticePoint p = point;
      p[axis] += zeta + 1;
      comb.support.emplace_back(std::move(p), high);
    }
    if (low > 0) {
      LatticePoint p = point;
      p[axis] += zeta;
      comb.support.emplace_back(std::move(p), low);
    }
  }
  cert.status = SumCertificate::Status::kCertified;
  cert.combination = std::move(comb);
  return cert;
}

SumCertificate box_sum_certificate(const LatticeSet& s, const IntegerBox& b,
                                   const RationalPoint& x) {
  if (s.dim() != b.dim())
    throw std::invalid_argument("box_sum_certificate: dimension mismatch");
  LatticeSet acc = s;
  for (int i = 0; i + 1 < b.dim(); ++i)
    acc = minkowski_sum(acc, segment_points(SegmentBox{i, b.lo()[i], b.hi()[i]}, b.dim()));
  int last = b.dim() - 1;
  return segment_sum_certificate(acc, SegmentBox{last, b.lo()[last], b.hi()[last]}, x);
}

}  // namespace dca
