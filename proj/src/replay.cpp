#include "replay.hpp"

#include <optional>

namespace dca {

namespace {

bool fail(std::string* why, const char* reason) {
  if (why) *why = reason;
  return false;
}

std::optional<LatticePoint> as_lattice(const RationalPoint& p) {
  LatticePoint out;
  out.reserve(p.size());
  for (const Rat& c : p) {
    if (!is_integral(c)) return std::nullopt;
    out.push_back(floor_to_int(c));
  }
  return out;
}

// v in conv(candidates) but not in conv(candidates restricted to the
// integral neighborhood of v): the core of every hole certificate.
bool confirm_hole(const RationalPoint& v, const LatticeSet& candidates,
                  const ViolationWitness& w, std::string* why) {
  if (!hull_membership(v, candidates).inside())
    return fail(why, "hole point is not in the hull");
  LatticeSet near(candidates.dim());
  LatticeSet neighborhood = integral_neighborhood(v);
  for (const LatticePoint& z : neighborhood.points())
    if (candidates.contains(z)) near.insert(z);
  if (!near.empty() && hull_membership(v, near).inside())
    return fail(why, "hole point is covered by its neighborhood hull");
  if (w.combination) {
    if (!w.combination->valid()) return fail(why, "stored combination is invalid");
    if (w.combination->target != v)
      return fail(why, "stored combination targets a different point");
    for (const auto& [p, weight] : w.combination->support)
      if (!candidates.contains(p))
        return fail(why, "stored combination uses a point outside the set");
  }
  if (w.separator) {
    for (const LatticePoint& z : near.points())
      if (!w.separator->contains(to_rational(z)))
        return fail(why, "stored separator cuts off a neighborhood point");
    if (!w.separator->strictly_excludes(v))
      return fail(why, "stored separator does not exclude the hole point");
  }
  return true;
}

bool values_match(const ViolationWitness& w, const DiscreteFunction& f,
                  const std::vector<LatticePoint>& pts, std::string* why) {
  if (w.values.empty()) return true;
  if (w.values.size() != pts.size())
    return fail(why, "recorded value count does not match the points");
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (f.at(pts[i]) != w.values[i]) return fail(why, "recorded value differs from the table");
  return true;
}

}  // namespace

bool replay_witness(const ViolationWitness& w, const LatticeSet* set,
                    const DiscreteFunction* fn, std::string* why) {
  if ((set != nullptr) == (fn != nullptr))
    return fail(why, "exactly one instance must be supplied");

  switch (w.kind) {
    case WitnessKind::kMidpointPair: {
      if (w.points.size() < 2) return fail(why, "midpoint witness needs two points");
      auto x = as_lattice(w.points[0]), y = as_lattice(w.points[1]);
      if (!x || !y) return fail(why, "midpoint witness points must be integral");
      auto [up, dn] = rounded_midpoints(*x, *y);
      if (set) {
        if (!set->contains(*x) || !set->contains(*y))
          return fail(why, "witness pair is not in the set");
        if (w.points.size() < 3) return fail(why, "no missing midpoint recorded");
        for (std::size_t i = 2; i < w.points.size(); ++i) {
          auto miss = as_lattice(w.points[i]);
          if (!miss || (*miss != up && *miss != dn))
            return fail(why, "recorded point is not a rounded midpoint");
          if (set->contains(*miss))
            return fail(why, "recorded midpoint is present in the set");
        }
        return true;
      }
      if (w.points.size() != 4) return fail(why, "midpoint witness needs four points");
      auto pu = as_lattice(w.points[2]), pd = as_lattice(w.points[3]);
      if (!pu || !pd || *pu != up || *pd != dn)
        return fail(why, "recorded midpoints are wrong");
      if (!values_match(w, *fn, {*x, *y, up, dn}, why)) return false;
      if (fn->at(*x) + fn->at(*y) >= fn->at(up) + fn->at(dn))
        return fail(why, "midpoint inequality actually holds");
      return true;
    }

    case WitnessKind::kHolePoint: {
      if (!set) return fail(why, "hole witness needs a set instance");
      if (w.points.empty()) return fail(why, "hole witness needs a point");
      return confirm_hole(w.points[0], *set, w, why);
    }

    case WitnessKind::kExchangePair: {
      if (!fn) return fail(why, "exchange witness needs a function instance");
      if (w.points.size() != 4) return fail(why, "exchange witness needs four points");
      std::vector<LatticePoint> pts;
      for (const auto& p : w.points) {
        auto z = as_lattice(p);
        if (!z) return fail(why, "exchange witness points must be integral");
        pts.push_back(*z);
      }
      for (std::size_t t = 0; t < pts[0].size(); ++t)
        if (pts[0][t] + pts[1][t] != pts[2][t] + pts[3][t])
          return fail(why, "exchange witness point sums differ");
      if (!values_match(w, *fn, pts, why)) return false;
      if (fn->at(pts[0]) + fn->at(pts[1]) >= fn->at(pts[2]) + fn->at(pts[3]))
        return fail(why, "exchange inequality actually holds");
      return true;
    }

    case WitnessKind::kEnvelopeGap: {
      if (!fn) return fail(why, "envelope witness needs a function instance");
      if (w.points.size() != 3) return fail(why, "envelope witness needs three points");
      auto x = as_lattice(w.points[0]), y = as_lattice(w.points[1]);
      if (!x || !y) return fail(why, "envelope witness pair must be integral");
      if (chebyshev_distance(*x, *y) != 2)
        return fail(why, "envelope witness pair is not at distance two");
      const RationalPoint& mid = w.points[2];
      for (std::size_t t = 0; t < mid.size(); ++t)
        if (mid[t] * 2 != Rat((long)((*x)[t] + (*y)[t])))
          return fail(why, "recorded midpoint is not the pair midpoint");
      Ext ext = local_convex_extension(*fn, mid).value;
      if (!w.values.empty()) {
        if (w.values.size() != 3) return fail(why, "envelope witness needs three values");
        if (w.values[0] != fn->at(*x) || w.values[1] != fn->at(*y) || w.values[2] != ext)
          return fail(why, "recorded values differ from the table");
      }
      if (ext + ext <= fn->at(*x) + fn->at(*y))
        return fail(why, "extension does not exceed the pair average");
      return true;
    }

    case WitnessKind::kParallelogramPair: {
      if (!fn) return fail(why, "parallelogram witness needs a function instance");
      if (w.points.size() != 4) return fail(why, "parallelogram witness needs four points");
      std::vector<LatticePoint> pts;
      for (const auto& p : w.points) {
        auto z = as_lattice(p);
        if (!z) return fail(why, "parallelogram witness points must be integral");
        pts.push_back(*z);
      }
      StepDecomposition sd = decompose_difference(pts[0], pts[1]);
      for (int k : w.levels)
        if (k < 0 || k >= sd.m) return fail(why, "level index out of range");
      LatticePoint d = sd.partial(fn->dim(), w.levels);
      for (std::size_t t = 0; t < d.size(); ++t) {
        if (pts[2][t] != pts[0][t] + d[t] || pts[3][t] != pts[1][t] - d[t])
          return fail(why, "recorded points do not match the step displacement");
      }
      if (!values_match(w, *fn, pts, why)) return false;
      if (fn->at(pts[0]) + fn->at(pts[1]) >= fn->at(pts[2]) + fn->at(pts[3]))
        return fail(why, "parallelogram inequality actually holds");
      return true;
    }

    case WitnessKind::kArgminHole: {
      if (!fn) return fail(why, "argmin witness needs a function instance");
      if (w.points.size() < 2) return fail(why, "argmin witness needs price and hole");
      const RationalPoint& price = w.points[0];
      if ((int)price.size() != fn->dim())
        return fail(why, "price dimension mismatch");
      LatticeSet argmin(fn->dim());
      bool have = false;
      Rat best = 0;
      fn->box().for_each([&](const LatticePoint& z) {
        Ext v = fn->at(z);
        if (!v.finite()) return;
        Rat shifted = v.value();
        for (std::size_t t = 0; t < price.size(); ++t)
          shifted -= price[t] * Rat((long)z[t]);
        if (!have || shifted < best) {
          best = shifted;
          have = true;
          argmin = LatticeSet(fn->dim());
        }
        if (shifted == best) argmin.insert(z);
      });
      return confirm_hole(w.points[1], argmin, w, why);
    }
  }
  return fail(why, "unknown witness kind");
}

namespace {

// Minimum pair distance a witness must exhibit for the given property, or
// 0 when any pair qualifies.
Coord required_pair_distance(const std::string& property) {
  if (property == "dmc-set" || property == "midpoint-fn-global" ||
      property == "parallelogram-global")
    return 2;
  if (property == "midpoint-fn-local" || property == "parallelogram-local") return 2;
  return 0;
}

}  // namespace

bool replay_report(const CheckReport& rep, const LatticeSet* set,
                   const DiscreteFunction* fn, std::string* why) {
  if (rep.verdict) {
    if (rep.witness) return fail(why, "true verdict must not carry a witness");
    return true;
  }
  if (!rep.witness) return fail(why, "false verdict must carry a witness");
  const ViolationWitness& w = *rep.witness;

  // Domain-level certificates of function checks replay against the
  // effective domain: hole points always, midpoint pairs when the witness
  // carries no values (set-style witness from the domain precheck).
  const LatticeSet* replay_set = set;
  std::optional<LatticeSet> dom;
  const DiscreteFunction* replay_fn = fn;
  if (fn && (w.kind == WitnessKind::kHolePoint ||
             (w.kind == WitnessKind::kMidpointPair && w.values.empty()))) {
    dom = fn->domain();
    replay_set = &*dom;
    replay_fn = nullptr;
  }
  if (!replay_witness(w, replay_set, replay_fn, why)) return false;

  Coord need = required_pair_distance(rep.property);
  if (need > 0 && w.kind == WitnessKind::kMidpointPair) {
    auto x = as_lattice(w.points[0]);
    auto y = as_lattice(w.points[1]);
    if (!x || !y) return fail(why, "witness pair must be integral");
    Coord dist = chebyshev_distance(*x, *y);
    if (dist < need) return fail(why, "witness pair distance below the gated mode");
    // The exact-distance modes accept distance-2 pair witnesses only; a
    // domain witness (no values) may sit at any distance >= 2.
    bool exact = rep.property == "midpoint-fn-local" || rep.property == "parallelogram-local";
    if (exact && !w.values.empty() && dist != 2)
      return fail(why, "witness pair distance must be exactly two");
  }
  if (w.kind == WitnessKind::kParallelogramPair &&
      rep.property == "parallelogram-local") {
    auto x = as_lattice(w.points[0]);
    auto y = as_lattice(w.points[1]);
    if (!x || !y || chebyshev_distance(*x, *y) != 2)
      return fail(why, "witness pair distance must be exactly two");
  }
  return true;
}

}  // namespace dca
