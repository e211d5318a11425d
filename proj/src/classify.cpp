#include "classify.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

namespace dca {

namespace {

using Clock = std::chrono::steady_clock;

std::chrono::microseconds since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0);
}

}  // namespace

const char* witness_kind_name(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::kMidpointPair: return "midpoint-pair";
    case WitnessKind::kHolePoint: return "hole-point";
    case WitnessKind::kExchangePair: return "submodular-pair";
    case WitnessKind::kEnvelopeGap: return "envelope-gap";
    case WitnessKind::kParallelogramPair: return "parallelogram-pair";
    case WitnessKind::kArgminHole: return "argmin-hole";
  }
  return "unknown";
}

std::optional<WitnessKind> witness_kind_from_name(const std::string& name) {
  for (WitnessKind k :
       {WitnessKind::kMidpointPair, WitnessKind::kHolePoint, WitnessKind::kExchangePair,
        WitnessKind::kEnvelopeGap, WitnessKind::kParallelogramPair,
        WitnessKind::kArgminHole})
    if (name == witness_kind_name(k)) return k;
  return std::nullopt;
}

CheckReport check_set_integrally_convex(const LatticeSet& s) {
  if (s.empty())
    throw std::invalid_argument("check_set_integrally_convex: empty set");
  require_geometry_dim(s.dim());
  auto t0 = Clock::now();
  CheckReport rep;
  rep.property = "integrally-convex-set";

  IntegerBox bbox = s.bounding_box();
  if ((std::uint64_t)s.size() == bbox.size()) {
    // The set is a full box; every cell is covered by its own corners.
    rep.note = "set fills its bounding box";
    rep.elapsed = since(t0);
    return rep;
  }

  HullDescription desc = hull_description(s);
  LatticePoint lo = bbox.lo(), hi = bbox.hi();
  for (int i = 0; i < s.dim(); ++i) hi[i] = std::max(lo[i], hi[i] - 1);
  bool done = false;
  IntegerBox(lo, hi).for_each([&](const LatticePoint& a) {
    if (done) return;
    ++rep.pairs_checked;
    LatticePoint b = a;
    for (Coord& c : b) ++c;
    bool corners_complete = true;
    IntegerBox(a, b).for_each([&](const LatticePoint& z) {
      corners_complete = corners_complete && s.contains(z);
    });
    if (corners_complete) return;
    if (!hull_meets_cell(s, a)) return;
    std::optional<RationalPoint> hole = cell_hull_equality(s, desc, a);
    if (!hole) return;
    ViolationWitness w;
    w.kind = WitnessKind::kHolePoint;
    w.points = {*hole};
    w.combination = hull_membership(*hole, s).combination;
    LatticeSet near(s.dim());
    LatticeSet neighborhood = integral_neighborhood(*hole);
    for (const LatticePoint& z : neighborhood.points())
      if (s.contains(z)) near.insert(z);
    if (!near.empty()) w.separator = hull_membership(*hole, near).separator;
    rep.verdict = false;
    rep.witness = std::move(w);
    done = true;
  });
  rep.elapsed = since(t0);
  return rep;
}

CheckReport check_set_midpoint(const LatticeSet& s, SetMidpointMode mode) {
  if (s.empty()) throw std::invalid_argument("check_set_midpoint: empty set");
  auto t0 = Clock::now();
  CheckReport rep;
  rep.property = mode == SetMidpointMode::kLnat ? "lnat-set" : "dmc-set";
  const auto& pts = s.points();
  for (std::size_t i = 0; i < pts.size() && rep.verdict; ++i) {
    for (std::size_t j = i + 1; j < pts.size() && rep.verdict; ++j) {
      Coord dist = chebyshev_distance(pts[i], pts[j]);
      if (mode == SetMidpointMode::kDmc && dist < 2) continue;
      ++rep.pairs_checked;
      auto [up, dn] = rounded_midpoints(pts[i], pts[j]);
      std::vector<LatticePoint> missing;
      if (!s.contains(up)) missing.push_back(up);
      if (dn != up && !s.contains(dn)) missing.push_back(dn);
      if (missing.empty()) continue;
      ViolationWitness w;
      w.kind = WitnessKind::kMidpointPair;
      w.points = {to_rational(pts[i]), to_rational(pts[j])};
      for (const auto& z : missing) w.points.push_back(to_rational(z));
      rep.verdict = false;
      rep.witness = std::move(w);
    }
  }
  rep.elapsed = since(t0);
  return rep;
}

CheckReport check_fn_midpoint(const DiscreteFunction& f, FnMidpointMode mode) {
  auto t0 = Clock::now();
  CheckReport rep;
  rep.property = mode == FnMidpointMode::kAll      ? "midpoint-fn-all"
                 : mode == FnMidpointMode::kGlobal ? "midpoint-fn-global"
                                                   : "midpoint-fn-local";
  LatticeSet dom = f.domain();
  if (mode == FnMidpointMode::kLocal) {
    CheckReport dom_rep = check_set_midpoint(dom, SetMidpointMode::kDmc);
    rep.pairs_checked += dom_rep.pairs_checked;
    if (!dom_rep.verdict) {
      rep.verdict = false;
      rep.witness = std::move(dom_rep.witness);
      rep.note = "effective domain is not midpoint closed";
      rep.elapsed = since(t0);
      return rep;
    }
  }
  const auto& pts = dom.points();
  for (std::size_t i = 0; i < pts.size() && rep.verdict; ++i) {
    for (std::size_t j = i + 1; j < pts.size() && rep.verdict; ++j) {
      Coord dist = chebyshev_distance(pts[i], pts[j]);
      if (mode == FnMidpointMode::kGlobal && dist < 2) continue;
      if (mode == FnMidpointMode::kLocal && dist != 2) continue;
      ++rep.pairs_checked;
      auto [up, dn] = rounded_midpoints(pts[i], pts[j]);
      Ext lhs = f.at(pts[i]) + f.at(pts[j]);
      Ext rhs = f.at(up) + f.at(dn);
      if (lhs >= rhs) continue;
      ViolationWitness w;
      w.kind = WitnessKind::kMidpointPair;
      w.points = {to_rational(pts[i]), to_rational(pts[j]), to_rational(up),
                  to_rational(dn)};
      w.values = {f.at(pts[i]), f.at(pts[j]), f.at(up), f.at(dn)};
      rep.verdict = false;
      rep.witness = std::move(w);
    }
  }
  rep.elapsed = since(t0);
  return rep;
}

CheckReport check_fn_integrally_convex(const DiscreteFunction& f) {
  require_geometry_dim(f.dim());
  auto t0 = Clock::now();
  CheckReport rep;
  rep.property = "integrally-convex-fn";
  LatticeSet dom = f.domain();

  if ((std::uint64_t)dom.size() != dom.bounding_box().size()) {
    CheckReport dom_rep = check_set_integrally_convex(dom);
    if (!dom_rep.verdict) {
      rep.verdict = false;
      rep.witness = std::move(dom_rep.witness);
      rep.note = "effective domain is not integrally convex";
      rep.pairs_checked = dom_rep.pairs_checked;
      rep.elapsed = since(t0);
      return rep;
    }
  }

  // Local extension values keyed by x + y; many pairs share a midpoint.
  std::map<LatticePoint, Ext> cache;
  const auto& pts = dom.points();
  for (std::size_t i = 0; i < pts.size() && rep.verdict; ++i) {
    for (std::size_t j = i + 1; j < pts.size() && rep.verdict; ++j) {
      if (chebyshev_distance(pts[i], pts[j]) != 2) continue;
      ++rep.pairs_checked;
      LatticePoint key(pts[i].size());
      RationalPoint mid(pts[i].size());
      for (std::size_t t = 0; t < key.size(); ++t) {
        key[t] = pts[i][t] + pts[j][t];
        mid[t] = Rat((long)key[t]) / 2;
      }
      auto it = cache.find(key);
      if (it == cache.end())
        it = cache.emplace(key, local_convex_extension(f, mid).value).first;
      // Violation: extension at the midpoint above the pair average,
      // compared as 2 * ext > f(x) + f(y) to stay rational.
      Ext doubled = it->second + it->second;
      Ext lhs = f.at(pts[i]) + f.at(pts[j]);
      if (doubled <= lhs) continue;
      ViolationWitness w;
      w.kind = WitnessKind::kEnvelopeGap;
      w.points = {to_rational(pts[i]), to_rational(pts[j]), mid};
      w.values = {f.at(pts[i]), f.at(pts[j]), it->second};
      w.combination = local_convex_extension(f, mid).combination;
      rep.verdict = false;
      rep.witness = std::move(w);
    }
  }
  rep.elapsed = since(t0);
  return rep;
}

CheckReport check_fn_submodular(const DiscreteFunction& f) {
  auto t0 = Clock::now();
  CheckReport rep;
  rep.property = "submodular-fn";
  LatticeSet dom = f.domain();
  const auto& pts = dom.points();
  for (std::size_t i = 0; i < pts.size() && rep.verdict; ++i) {
    for (std::size_t j = i + 1; j < pts.size() && rep.verdict; ++j) {
      LatticePoint join(pts[i].size()), meet(pts[i].size());
      for (std::size_t t = 0; t < join.size(); ++t) {
        join[t] = std::max(pts[i][t], pts[j][t]);
        meet[t] = std::min(pts[i][t], pts[j][t]);
      }
      if (join == pts[i] || join == pts[j]) continue;  // comparable pair
      ++rep.pairs_checked;
      Ext lhs = f.at(pts[i]) + f.at(pts[j]);
      Ext rhs = f.at(join) + f.at(meet);
      if (lhs >= rhs) continue;
      ViolationWitness w;
      w.kind = WitnessKind::kExchangePair;
      w.points = {to_rational(pts[i]), to_rational(pts[j]), to_rational(join),
                  to_rational(meet)};
      w.values = {f.at(pts[i]), f.at(pts[j]), f.at(join), f.at(meet)};
      rep.verdict = false;
      rep.witness = std::move(w);
    }
  }
  rep.elapsed = since(t0);
  return rep;
}

CheckReport check_fn_lnat(const DiscreteFunction& f) {
  // Midpoint closure over all pairs characterizes this class; the
  // submodular-and-integrally-convex route is cross-checked in tests.
  CheckReport rep = check_fn_midpoint(f, FnMidpointMode::kAll);
  rep.property = "lnat-fn";
  return rep;
}

CheckReport check_fn_separable(const DiscreteFunction& f) {
  auto t0 = Clock::now();
  CheckReport rep;
  rep.property = "separable-fn";
  LatticeSet dom = f.domain();
  const auto& pts = dom.points();
  for (std::size_t i = 0; i < pts.size() && rep.verdict; ++i) {
    for (std::size_t j = i + 1; j < pts.size() && rep.verdict; ++j) {
      const LatticePoint& x = pts[i];
      const LatticePoint& y = pts[j];
      std::vector<std::size_t> diff_axes;
      for (std::size_t t = 0; t < x.size(); ++t)
        if (x[t] != y[t]) diff_axes.push_back(t);
      if (diff_axes.size() == 1) {
        // One-dimensional fiber: midpoint convexity along the axis, which
        // also rules out gaps in the attained axis values.
        if (std::abs(x[diff_axes[0]] - y[diff_axes[0]]) < 2) continue;
        ++rep.pairs_checked;
        auto [up, dn] = rounded_midpoints(x, y);
        Ext lhs = f.at(x) + f.at(y);
        Ext rhs = f.at(up) + f.at(dn);
        if (lhs >= rhs) continue;
        ViolationWitness w;
        w.kind = WitnessKind::kMidpointPair;
        w.points = {to_rational(x), to_rational(y), to_rational(up), to_rational(dn)};
        w.values = {f.at(x), f.at(y), f.at(up), f.at(dn)};
        rep.verdict = false;
        rep.witness = std::move(w);
        continue;
      }
      // Across axes a separable function is modular: exchanging any single
      // coordinate between the two points must preserve the value sum.
      for (std::size_t t : diff_axes) {
        ++rep.pairs_checked;
        LatticePoint swapped_x = x, swapped_y = y;
        std::swap(swapped_x[t], swapped_y[t]);
        Ext lhs = f.at(x) + f.at(y);
        Ext rhs = f.at(swapped_x) + f.at(swapped_y);
        if (lhs == rhs) continue;
        ViolationWitness w;
        w.kind = WitnessKind::kExchangePair;
        if (lhs < rhs) {
          w.points = {to_rational(x), to_rational(y), to_rational(swapped_x),
                      to_rational(swapped_y)};
          w.values = {f.at(x), f.at(y), f.at(swapped_x), f.at(swapped_y)};
        } else {
          w.points = {to_rational(swapped_x), to_rational(swapped_y), to_rational(x),
                      to_rational(y)};
          w.values = {f.at(swapped_x), f.at(swapped_y), f.at(x), f.at(y)};
        }
        rep.verdict = false;
        rep.witness = std::move(w);
        break;
      }
    }
  }
  rep.elapsed = since(t0);
  return rep;
}

CheckReport check_parallelogram(const DiscreteFunction& f, FnMidpointMode mode) {
  if (mode == FnMidpointMode::kAll)
    throw std::invalid_argument("check_parallelogram: mode must be global or local");
  auto t0 = Clock::now();
  CheckReport rep;
  rep.property = mode == FnMidpointMode::kGlobal ? "parallelogram-global"
                                                 : "parallelogram-local";
  CheckReport pre = check_fn_midpoint(f, mode);
  if (!pre.verdict) {
    rep.verdict = false;
    rep.witness = std::move(pre.witness);
    rep.pairs_checked = pre.pairs_checked;
    rep.note = "midpoint precondition failed";
    rep.elapsed = since(t0);
    return rep;
  }

  LatticeSet dom = f.domain();
  const auto& pts = dom.points();
  for (std::size_t i = 0; i < pts.size() && rep.verdict; ++i) {
    for (std::size_t j = i + 1; j < pts.size() && rep.verdict; ++j) {
      Coord dist = chebyshev_distance(pts[i], pts[j]);
      if (mode == FnMidpointMode::kGlobal && dist < 2) continue;
      if (mode == FnMidpointMode::kLocal && dist != 2) continue;
      StepDecomposition sd = decompose_difference(pts[i], pts[j]);
      std::uint64_t subsets = (std::uint64_t)1 << sd.m;
      for (std::uint64_t mask = 1; mask + 1 < subsets && rep.verdict; ++mask) {
        ++rep.pairs_checked;
        std::vector<int> levels;
        for (int k = 0; k < sd.m; ++k)
          if (mask & ((std::uint64_t)1 << k)) levels.push_back(k);
        LatticePoint d = sd.partial(f.dim(), levels);
        LatticePoint xd = pts[i], yd = pts[j];
        for (std::size_t t = 0; t < d.size(); ++t) {
          xd[t] += d[t];
          yd[t] -= d[t];
        }
        Ext lhs = f.at(pts[i]) + f.at(pts[j]);
        Ext rhs = f.at(xd) + f.at(yd);
        if (lhs >= rhs) continue;
        ViolationWitness w;
        w.kind = WitnessKind::kParallelogramPair;
        w.points = {to_rational(pts[i]), to_rational(pts[j]), to_rational(xd),
                    to_rational(yd)};
        w.values = {f.at(pts[i]), f.at(pts[j]), f.at(xd), f.at(yd)};
        w.levels = std::move(levels);
        rep.verdict = false;
        rep.witness = std::move(w);
      }
    }
  }
  rep.elapsed = since(t0);
  return rep;
}

CheckReport check_argmin_characterization(const DiscreteFunction& f, int probes,
                                          std::uint64_t seed) {
  if (probes < 1)
    throw std::invalid_argument("check_argmin_characterization: probes must be positive");
  require_geometry_dim(f.dim());
  auto t0 = Clock::now();
  CheckReport rep;
  rep.property = "argmin-ic";
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> den_dist(1, 3);

  for (int probe = 0; probe < probes && rep.verdict; ++probe) {
    RationalPoint price((std::size_t)f.dim(), Rat(0));
    if (probe > 0) {
      for (Rat& c : price) {
        int den = den_dist(rng);
        std::uniform_int_distribution<int> num_dist(-3 * den, 3 * den);
        c = Rat(num_dist(rng), den);
        c.canonicalize();
      }
    }
    ++rep.pairs_checked;

    LatticeSet argmin(f.dim());
    bool have = false;
    Rat best = 0;
    f.box().for_each([&](const LatticePoint& x) {
      Ext v = f.at(x);
      if (!v.finite()) return;
      Rat shifted = v.value();
      for (std::size_t t = 0; t < price.size(); ++t)
        shifted -= price[t] * Rat((long)x[t]);
      if (!have || shifted < best) {
        best = shifted;
        have = true;
        argmin = LatticeSet(f.dim());
      }
      if (shifted == best) argmin.insert(x);
    });

    CheckReport sub = check_set_integrally_convex(argmin);
    if (sub.verdict) continue;
    ViolationWitness w;
    w.kind = WitnessKind::kArgminHole;
    w.points = {price};
    for (const auto& p : sub.witness->points) w.points.push_back(p);
    w.combination = std::move(sub.witness->combination);
    w.separator = std::move(sub.witness->separator);
    rep.verdict = false;
    rep.witness = std::move(w);
    rep.note = "argmin of the linearly shifted table is not integrally convex";
  }
  if (rep.verdict) rep.note = "no refutation found within the probe budget";
  rep.elapsed = since(t0);
  return rep;
}

QuadraticVerdict classify_quadratic(const RatMat& q, const std::vector<int>& y_block) {
  std::size_t n = q.size();
  if (n == 0) throw std::invalid_argument("classify_quadratic: empty matrix");
  for (const auto& row : q)
    if (row.size() != n) throw std::invalid_argument("classify_quadratic: not square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (q[i][j] != q[j][i])
        throw std::invalid_argument("classify_quadratic: matrix must be symmetric");
  std::vector<bool> seen(n, false);
  for (int idx : y_block) {
    if (idx < 0 || (std::size_t)idx >= n)
      throw std::invalid_argument("classify_quadratic: block index out of range");
    if (seen[(std::size_t)idx])
      throw std::invalid_argument("classify_quadratic: duplicate block index");
    seen[(std::size_t)idx] = true;
  }

  QuadraticVerdict v;
  v.diagonally_dominant_ic = true;
  for (std::size_t i = 0; i < n; ++i) {
    Rat off = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) off += abs(q[i][j]);
    if (q[i][i] < off) v.diagonally_dominant_ic = false;
  }

  v.lnat_in_block = true;
  for (int ii : y_block) {
    std::size_t i = (std::size_t)ii;
    Rat off = 0;
    for (int jj : y_block) {
      std::size_t j = (std::size_t)jj;
      if (j == i) continue;
      off += abs(q[i][j]);
      if (q[i][j] > 0) v.lnat_in_block = false;
    }
    if (q[i][i] < off) v.lnat_in_block = false;
  }

  v.mnat_in_block = true;
  for (int ii : y_block)
    for (int jj : y_block)
      if (q[(std::size_t)ii][(std::size_t)jj] < 0) v.mnat_in_block = false;
  for (int ii : y_block)
    for (int jj : y_block) {
      if (ii == jj) continue;
      for (int kk : y_block) {
        if (kk == ii || kk == jj) continue;
        const Rat& qij = q[(std::size_t)ii][(std::size_t)jj];
        const Rat& qik = q[(std::size_t)ii][(std::size_t)kk];
        const Rat& qjk = q[(std::size_t)jj][(std::size_t)kk];
        if (qij < std::min(qik, qjk)) v.mnat_in_block = false;
      }
    }
  return v;
}

ChainVerdict classify_chain(const DiscreteFunction& f) {
  ChainVerdict v;
  v.reports.push_back(check_fn_separable(f));
  v.reports.push_back(check_fn_lnat(f));
  v.reports.push_back(check_fn_midpoint(f, FnMidpointMode::kGlobal));
  v.reports.push_back(check_fn_midpoint(f, FnMidpointMode::kLocal));
  v.reports.push_back(check_fn_integrally_convex(f));
  v.separable = v.reports[0].verdict;
  v.lnat = v.reports[1].verdict;
  v.global_midpoint = v.reports[2].verdict;
  v.local_midpoint = v.reports[3].verdict;
  v.integrally_convex = v.reports[4].verdict;
  bool chain[] = {v.separable, v.lnat, v.global_midpoint, v.local_midpoint,
                  v.integrally_convex};
  for (int k = 0; k + 1 < 5; ++k)
    if (chain[k] && !chain[k + 1])
      throw std::logic_error("classify_chain: verdicts break the inclusion chain");
  return v;
}

}  // namespace dca
