#include "generators.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>
#include <vector>

namespace dca {

namespace {

Coord uniform_coord(Rng& rng, Coord lo, Coord hi) {
  return std::uniform_int_distribution<Coord>(lo, hi)(rng);
}

LatticePoint random_point(Rng& rng, const IntegerBox& box) {
  LatticePoint x(box.dim());
  for (int i = 0; i < box.dim(); ++i) {
    x[i] = uniform_coord(rng, box.lo()[i], box.hi()[i]);
  }
  return x;
}

// Symmetric integer matrix with diagonal at least the absolute row sum of
// the off-diagonal part. nonpositive_offdiag additionally clamps the
// off-diagonal entries to be <= 0.
std::vector<std::vector<Rat>> random_dominant_matrix(Rng& rng, int dim,
                                                     bool nonpositive_offdiag) {
  std::vector<std::vector<Rat>> q(dim, std::vector<Rat>(dim, Rat(0)));
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      Coord lo = -2;
      Coord hi = nonpositive_offdiag ? 0 : 2;
      Rat v(uniform_coord(rng, lo, hi));
      q[i][j] = v;
      q[j][i] = v;
    }
  }
  for (int i = 0; i < dim; ++i) {
    Rat row_sum(0);
    for (int j = 0; j < dim; ++j) {
      if (j != i) row_sum += abs(q[i][j]);
    }
    q[i][i] = row_sum + Rat(uniform_coord(rng, 0, 2));
  }
  return q;
}

Rat quadratic_value(const std::vector<std::vector<Rat>>& q,
                    const LatticePoint& x) {
  Rat total(0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      total += q[i][j] * Rat(x[i]) * Rat(x[j]);
    }
  }
  return total;
}

DiscreteFunction table_from_values(const IntegerBox& box,
                                   const std::function<Ext(const LatticePoint&)>& value) {
  std::vector<Ext> values(box.size(), Ext::infinity());
  box.for_each([&](const LatticePoint& x) {
    values[box.index_of(x)] = value(x);
  });
  return DiscreteFunction(box, std::move(values));
}

// Bump one or two finite entries of the base table by +-1 and keep the
// result only if the supplied predicate accepts it.
DiscreteFunction perturb_and_filter(
    Rng& rng, const DiscreteFunction& base,
    const std::function<bool(const DiscreteFunction&)>& accept, int attempts) {
  std::vector<LatticePoint> finite;
  base.box().for_each([&](const LatticePoint& x) {
    if (base.at(x).finite()) finite.push_back(x);
  });
  if (finite.empty()) return base;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    DiscreteFunction candidate = base;
    int bumps = 1 + static_cast<int>(uniform_coord(rng, 0, 1));
    for (int b = 0; b < bumps; ++b) {
      const LatticePoint& where =
          finite[static_cast<std::size_t>(uniform_coord(
              rng, 0, static_cast<Coord>(finite.size()) - 1))];
      Rat delta(uniform_coord(rng, 0, 1) == 0 ? -1 : 1);
      candidate.set(where, Ext(candidate.at(where).value() + delta));
    }
    if (accept(candidate)) return candidate;
  }
  return base;
}

}  // namespace

IntegerBox random_box(Rng& rng, int dim, Coord lo_range, Coord max_width) {
  if (dim <= 0) throw std::invalid_argument("random_box: dim must be positive");
  if (max_width < 1) throw std::invalid_argument("random_box: max_width must be >= 1");
  LatticePoint lo(dim), hi(dim);
  for (int i = 0; i < dim; ++i) {
    lo[i] = uniform_coord(rng, -lo_range, lo_range);
    hi[i] = lo[i] + uniform_coord(rng, 1, max_width);
  }
  return IntegerBox(lo, hi);
}

DiscreteFunction random_separable_convex(Rng& rng, const IntegerBox& box) {
  std::vector<std::vector<Rat>> pieces(box.dim());
  for (int i = 0; i < box.dim(); ++i) {
    Coord width = box.hi()[i] - box.lo()[i];
    std::vector<Rat> vals(static_cast<std::size_t>(width) + 1);
    vals[0] = Rat(uniform_coord(rng, -3, 3));
    Rat slope(uniform_coord(rng, -2, 2));
    for (Coord k = 0; k < width; ++k) {
      vals[static_cast<std::size_t>(k) + 1] = vals[static_cast<std::size_t>(k)] + slope;
      slope += Rat(uniform_coord(rng, 0, 2));
    }
    pieces[i] = std::move(vals);
  }
  return table_from_values(box, [&](const LatticePoint& x) {
    Rat total(0);
    for (int i = 0; i < box.dim(); ++i) {
      total += pieces[i][static_cast<std::size_t>(x[i] - box.lo()[i])];
    }
    return Ext(total);
  });
}

LatticeSet midpoint_closure(LatticeSet seeds, bool distant_pairs_only) {
  std::set<LatticePoint> points(seeds.points().begin(), seeds.points().end());
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<LatticePoint> snapshot(points.begin(), points.end());
    for (std::size_t i = 0; i < snapshot.size(); ++i) {
      for (std::size_t j = i + 1; j < snapshot.size(); ++j) {
        if (distant_pairs_only &&
            chebyshev_distance(snapshot[i], snapshot[j]) < 2) {
          continue;
        }
        auto [up, dn] = rounded_midpoints(snapshot[i], snapshot[j]);
        changed |= points.insert(up).second;
        changed |= points.insert(dn).second;
      }
    }
  }
  return LatticeSet(seeds.dim(),
                    std::vector<LatticePoint>(points.begin(), points.end()));
}

namespace {

LatticeSet random_closure_set(Rng& rng, const IntegerBox& box, int seed_count,
                              bool distant_pairs_only) {
  if (seed_count < 1) {
    throw std::invalid_argument("random seed count must be >= 1");
  }
  std::set<LatticePoint> seeds;
  for (int k = 0; k < seed_count; ++k) {
    seeds.insert(random_point(rng, box));
  }
  LatticeSet seed_set(box.dim(),
                      std::vector<LatticePoint>(seeds.begin(), seeds.end()));
  return midpoint_closure(std::move(seed_set), distant_pairs_only);
}

}  // namespace

LatticeSet random_lnat_set(Rng& rng, const IntegerBox& box, int seed_count) {
  return random_closure_set(rng, box, seed_count, false);
}

LatticeSet random_dmc_set(Rng& rng, const IntegerBox& box, int seed_count) {
  return random_closure_set(rng, box, seed_count, true);
}

LatticeSet random_ic_set(Rng& rng, const IntegerBox& box) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    LatticeSet candidate(box.dim());
    if (attempt % 2 == 0) {
      Coord cap = std::min<Coord>(10, static_cast<Coord>(box.size()));
      Coord target = uniform_coord(rng, std::min<Coord>(3, cap), cap);
      std::set<LatticePoint> picked;
      for (Coord k = 0; k < 4 * target && static_cast<Coord>(picked.size()) < target; ++k) {
        picked.insert(random_point(rng, box));
      }
      candidate = LatticeSet(box.dim(),
                             std::vector<LatticePoint>(picked.begin(), picked.end()));
    } else {
      candidate = random_dmc_set(rng, box, 3);
    }
    if (candidate.points().empty()) continue;
    if (check_set_integrally_convex(candidate).verdict) return candidate;
  }
  // Singletons are integrally convex, so this cannot loop forever.
  return LatticeSet(box.dim(), {random_point(rng, box)});
}

DiscreteFunction random_lnat_function(Rng& rng, const IntegerBox& box) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    int variant = static_cast<int>(uniform_coord(rng, 0, 2));
    DiscreteFunction candidate = [&]() {
      if (variant == 0) return random_separable_convex(rng, box);
      if (variant == 1) {
        auto q = random_dominant_matrix(rng, box.dim(), true);
        DiscreteFunction sep = random_separable_convex(rng, box);
        return table_from_values(box, [&](const LatticePoint& x) {
          return Ext(quadratic_value(q, x)) + sep.at(x);
        });
      }
      LatticeSet dom = random_lnat_set(rng, box, 3);
      DiscreteFunction sep = random_separable_convex(rng, box);
      return table_from_values(box, [&](const LatticePoint& x) {
        return dom.contains(x) ? sep.at(x) : Ext::infinity();
      });
    }();
    if (check_fn_midpoint(candidate, FnMidpointMode::kAll).verdict) {
      return candidate;
    }
  }
  return random_separable_convex(rng, box);
}

DiscreteFunction random_midpoint_function(Rng& rng, const IntegerBox& box,
                                          FnMidpointMode mode) {
  DiscreteFunction base = random_lnat_function(rng, box);
  return perturb_and_filter(
      rng, base,
      [&](const DiscreteFunction& f) {
        return check_fn_midpoint(f, mode).verdict;
      },
      4);
}

namespace {

DiscreteFunction random_ic_base(Rng& rng, const IntegerBox& box) {
  int variant = static_cast<int>(uniform_coord(rng, 0, 2));
  if (variant == 0) return random_separable_convex(rng, box);
  if (variant == 1) {
    auto q = random_dominant_matrix(rng, box.dim(), false);
    std::vector<Rat> linear(static_cast<std::size_t>(box.dim()));
    for (auto& c : linear) c = Rat(uniform_coord(rng, -2, 2));
    return table_from_values(box, [&](const LatticePoint& x) {
      Rat total = quadratic_value(q, x);
      for (int i = 0; i < box.dim(); ++i) {
        total += linear[static_cast<std::size_t>(i)] * Rat(x[i]);
      }
      return Ext(total);
    });
  }
  return random_lnat_function(rng, box);
}

}  // namespace

DiscreteFunction random_ic_function(Rng& rng, const IntegerBox& box) {
  DiscreteFunction base = random_ic_base(rng, box);
  if (uniform_coord(rng, 0, 3) < 3) return base;
  return perturb_and_filter(
      rng, base,
      [&](const DiscreteFunction& f) {
        return check_fn_integrally_convex(f).verdict;
      },
      3);
}

DiscreteFunction random_table(Rng& rng, const IntegerBox& box, int value_range,
                              int infinite_percent) {
  if (value_range < 0 || infinite_percent < 0 || infinite_percent > 100) {
    throw std::invalid_argument("random_table: bad parameters");
  }
  std::vector<Ext> values(box.size());
  bool any_finite = false;
  for (auto& v : values) {
    if (uniform_coord(rng, 1, 100) <= infinite_percent) {
      v = Ext::infinity();
    } else {
      v = Ext(Rat(uniform_coord(rng, -value_range, value_range)));
      any_finite = true;
    }
  }
  if (!any_finite) values[values.size() / 2] = Ext(Rat(0));
  return DiscreteFunction(box, std::move(values));
}

}  // namespace dca
