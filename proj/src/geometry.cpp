#include "geometry.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "simplex.hpp"

namespace dca {

void require_geometry_dim(int dim) {
  if (dim > kMaxGeometryDim)
    throw std::invalid_argument("dimension exceeds the supported limit of 8");
}

namespace {

// Scales a normal/offset pair so the normal is integral with gcd 1. The
// normal must be nonzero.
void integer_scale(RatVec& normal, Rat& offset) {
  mpz_class lcm = 1;
  for (const Rat& v : normal) {
    mpz_class d = v.get_den();
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), d.get_mpz_t());
  }
  Rat scale(lcm);
  mpz_class g = 0;
  for (Rat& v : normal) {
    v *= scale;
    v.canonicalize();
    mpz_class num = v.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
  }
  offset *= scale;
  if (g == 0) throw std::logic_error("integer_scale: zero normal");
  Rat shrink(g);
  for (Rat& v : normal) {
    v /= shrink;
    v.canonicalize();
  }
  offset /= shrink;
  offset.canonicalize();
}

bool lex_less(const RatVec& a, const RatVec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Square subset enumeration helper: visits all k-subsets of {0,...,n-1}
// in lexicographic order.
void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i-- > 0) {
      if (idx[i] + (k - i) < n) {
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
      if (i == 0) return;
    }
    if (k == 0) return;
  }
}

}  // namespace

bool ConvexCombination::valid() const {
  if (support.empty()) return false;
  Rat total = 0;
  RatVec avg(target.size(), Rat(0));
  for (const auto& [point, weight] : support) {
    if (point.size() != target.size()) return false;
    if (weight <= 0) return false;
    total += weight;
    for (std::size_t i = 0; i < avg.size(); ++i)
      avg[i] += weight * Rat((long)point[i]);
  }
  return total == 1 && avg == target;
}

Ext ConvexCombination::weighted_value(const DiscreteFunction& f) const {
  Ext sum(0);
  for (const auto& [point, weight] : support) sum = sum + weight * f.at(point);
  return sum;
}

void ConvexCombination::reduce() {
  std::size_t n = target.size();
  for (;;) {
    // An affine dependency among the support points lets one weight be
    // shifted to zero; independence bounds the support by n + 1.
    RatMat m(n + 1, RatVec(support.size(), Rat(0)));
    for (std::size_t j = 0; j < support.size(); ++j) {
      for (std::size_t i = 0; i < n; ++i) m[i][j] = Rat((long)support[j].first[i]);
      m[n][j] = 1;
    }
    RatMat basis = nullspace(m, (int)support.size());
    if (basis.empty()) return;
    RatVec mu = basis[0];
    bool has_pos = false;
    for (const Rat& v : mu) has_pos = has_pos || v > 0;
    if (!has_pos)
      for (Rat& v : mu) v = -v;
    // Largest t with weight - t*mu >= 0; zeroes at least one weight.
    bool first = true;
    Rat t = 0;
    for (std::size_t j = 0; j < mu.size(); ++j) {
      if (mu[j] <= 0) continue;
      Rat cand = support[j].second / mu[j];
      if (first || cand < t) {
        t = cand;
        first = false;
      }
    }
    std::vector<std::pair<LatticePoint, Rat>> next;
    for (std::size_t j = 0; j < mu.size(); ++j) {
      Rat w = support[j].second - t * mu[j];
      if (w > 0) next.emplace_back(support[j].first, w);
    }
    support = std::move(next);
  }
}

Halfspace Halfspace::canonicalized(RatVec normal, Rat offset) {
  integer_scale(normal, offset);
  return Halfspace{std::move(normal), std::move(offset)};
}

bool Halfspace::contains(const RationalPoint& z) const {
  return dot(normal, z) <= offset;
}

bool Halfspace::strictly_excludes(const RationalPoint& z) const {
  return dot(normal, z) > offset;
}

bool Halfspace::operator<(const Halfspace& other) const {
  if (normal != other.normal) return lex_less(normal, other.normal);
  return offset < other.offset;
}

bool Halfspace::operator==(const Halfspace& other) const {
  return normal == other.normal && offset == other.offset;
}

HullMembership hull_membership(const RationalPoint& x, const LatticeSet& v) {
  if ((int)x.size() != v.dim())
    throw std::invalid_argument("hull_membership: dimension mismatch");
  if (v.empty()) throw std::invalid_argument("hull_membership: empty point set");
  require_geometry_dim(v.dim());
  std::size_t n = x.size(), k = v.size();
  LpProblem p;
  p.a.assign(n + 1, RatVec(k, Rat(0)));
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < n; ++i) p.a[i][j] = Rat((long)v.points()[j][i]);
    p.a[n][j] = 1;
  }
  p.b = x;
  p.b.push_back(Rat(1));
  p.c.assign(k, Rat(0));
  LpResult res = solve_lp(p);
  HullMembership out;
  if (res.status == LpStatus::kOptimal) {
    ConvexCombination comb;
    comb.target = x;
    for (std::size_t j = 0; j < k; ++j)
      if (res.x[j] > 0) comb.support.emplace_back(v.points()[j], res.x[j]);
    out.combination = std::move(comb);
  } else {
    RatVec g(res.farkas.begin(), res.farkas.begin() + (long)n);
    Rat offset = -res.farkas[n];
    out.separator = Halfspace::canonicalized(std::move(g), std::move(offset));
  }
  return out;
}

EnvelopeValue minimize_over_combinations(const DiscreteFunction& f,
                                         const std::vector<LatticePoint>& candidates,
                                         const RationalPoint& x) {
  std::vector<LatticePoint> pts;
  for (const auto& y : candidates)
    if (f.at(y).finite()) pts.push_back(y);
  if (pts.empty()) return {Ext::infinity(), std::nullopt};
  std::size_t n = x.size(), k = pts.size();
  LpProblem p;
  p.a.assign(n + 1, RatVec(k, Rat(0)));
  p.c.assign(k, Rat(0));
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < n; ++i) p.a[i][j] = Rat((long)pts[j][i]);
    p.a[n][j] = 1;
    p.c[j] = f.at(pts[j]).value();
  }
  p.b = x;
  p.b.push_back(Rat(1));
  LpResult res = solve_lp(p);
  if (res.status != LpStatus::kOptimal) return {Ext::infinity(), std::nullopt};
  ConvexCombination comb;
  comb.target = x;
  for (std::size_t j = 0; j < k; ++j)
    if (res.x[j] > 0) comb.support.emplace_back(pts[j], res.x[j]);
  return {Ext(res.objective), std::move(comb)};
}

EnvelopeValue local_convex_extension(const DiscreteFunction& f,
                                     const RationalPoint& x) {
  if ((int)x.size() != f.dim())
    throw std::invalid_argument("local_convex_extension: dimension mismatch");
  require_geometry_dim(f.dim());
  if (!f.box().contains(x))
    throw std::invalid_argument("local_convex_extension: point outside the table box");
  return minimize_over_combinations(f, integral_neighborhood(x).points(), x);
}

EnvelopeValue convex_envelope_value(const DiscreteFunction& f,
                                    const RationalPoint& x) {
  if ((int)x.size() != f.dim())
    throw std::invalid_argument("convex_envelope_value: dimension mismatch");
  require_geometry_dim(f.dim());
  return minimize_over_combinations(f, f.domain().points(), x);
}

namespace {

// Local-coordinate view of an affinely deficient point set: pivot
// coordinates give an injective integer chart of the affine hull.
struct AffineChart {
  int rank = 0;
  std::vector<int> pivot_cols;
  std::vector<LatticePoint> local;  // one per input point, dimension rank
};

AffineChart build_chart(const std::vector<LatticePoint>& pts) {
  AffineChart chart;
  std::size_t n = pts[0].size();
  RatMat diffs;
  for (std::size_t k = 1; k < pts.size(); ++k) {
    RatVec row(n);
    for (std::size_t i = 0; i < n; ++i) row[i] = Rat((long)(pts[k][i] - pts[0][i]));
    diffs.push_back(std::move(row));
  }
  RatMat scratch = diffs;
  chart.rank = rref_in_place(scratch, &chart.pivot_cols);
  chart.local.reserve(pts.size());
  for (const auto& p : pts) {
    LatticePoint q((std::size_t)chart.rank);
    for (int t = 0; t < chart.rank; ++t)
      q[(std::size_t)t] = p[(std::size_t)chart.pivot_cols[(std::size_t)t]] -
                          pts[0][(std::size_t)chart.pivot_cols[(std::size_t)t]];
    chart.local.push_back(std::move(q));
  }
  return chart;
}

// Indices of points that are vertices of the hull of `local`. A point
// that is the midpoint of two others is discarded cheaply; the rest are
// settled with a membership LP against the remaining points.
std::vector<std::size_t> hull_vertex_indices(const std::vector<LatticePoint>& local, int dim) {
  std::vector<LatticePoint> sorted = local;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < local.size(); ++k) {
    bool midpoint = false;
    for (std::size_t q = 0; q < local.size() && !midpoint; ++q) {
      if (q == k) continue;
      LatticePoint mirror(local[k].size());
      for (std::size_t i = 0; i < mirror.size(); ++i)
        mirror[i] = 2 * local[k][i] - local[q][i];
      if (mirror != local[k] &&
          std::binary_search(sorted.begin(), sorted.end(), mirror))
        midpoint = true;
    }
    if (midpoint) continue;
    LatticeSet others(dim);
    for (std::size_t q = 0; q < local.size(); ++q)
      if (q != k) others.insert(local[q]);
    if (others.empty() || !hull_membership(to_rational(local[k]), others).inside())
      keep.push_back(k);
  }
  return keep;
}

}  // namespace

HullDescription hull_description(const LatticeSet& s) {
  if (s.empty()) throw std::invalid_argument("hull_description: empty set");
  require_geometry_dim(s.dim());
  std::size_t n = (std::size_t)s.dim();
  const auto& pts = s.points();
  HullDescription out;
  if (pts.size() == 1) {
    for (std::size_t i = 0; i < n; ++i) {
      RatVec e(n, Rat(0));
      e[i] = 1;
      out.equalities.emplace_back(std::move(e), Rat((long)pts[0][i]));
    }
    return out;
  }

  AffineChart chart = build_chart(pts);
  std::size_t d = (std::size_t)chart.rank;

  if (d < n) {
    RatMat diffs;
    for (std::size_t k = 1; k < pts.size(); ++k) {
      RatVec row(n);
      for (std::size_t i = 0; i < n; ++i) row[i] = Rat((long)(pts[k][i] - pts[0][i]));
      diffs.push_back(std::move(row));
    }
    for (RatVec e : nullspace(diffs, (int)n)) {
      Rat r = 0;
      for (std::size_t i = 0; i < n; ++i) r += e[i] * Rat((long)pts[0][i]);
      integer_scale(e, r);
      for (const Rat& v : e) {
        if (v == 0) continue;
        if (v < 0) {
          for (Rat& w : e) w = -w;
          r = -r;
        }
        break;
      }
      out.equalities.emplace_back(std::move(e), std::move(r));
    }
  }

  // Facets in local coordinates: hyperplanes through affinely independent
  // d-subsets with all points on one side.
  std::vector<std::size_t> cand;
  if (pts.size() > 12) {
    cand = hull_vertex_indices(chart.local, (int)d);
  } else {
    for (std::size_t k = 0; k < pts.size(); ++k) cand.push_back(k);
  }
  std::set<Halfspace> local_facets;
  for_each_subset(cand.size(), d, [&](const std::vector<std::size_t>& idx) {
    RatMat rows;
    for (std::size_t t = 1; t < d; ++t) {
      RatVec row(d);
      for (std::size_t i = 0; i < d; ++i)
        row[i] = Rat((long)(chart.local[cand[idx[t]]][i] - chart.local[cand[idx[0]]][i]));
      rows.push_back(std::move(row));
    }
    RatMat ns = nullspace(rows, (int)d);
    if (ns.size() != 1) return;
    RatVec g = ns[0];
    Rat h = 0;
    for (std::size_t i = 0; i < d; ++i)
      h += g[i] * Rat((long)chart.local[cand[idx[0]]][i]);
    bool above = false, below = false;
    for (const auto& q : chart.local) {
      Rat val = 0;
      for (std::size_t i = 0; i < d; ++i) val += g[i] * Rat((long)q[i]);
      if (val > h) above = true;
      if (val < h) below = true;
      if (above && below) return;
    }
    if (above) {
      for (Rat& v : g) v = -v;
      h = -h;
    }
    local_facets.insert(Halfspace::canonicalized(std::move(g), std::move(h)));
  });

  for (const Halfspace& lf : local_facets) {
    RatVec normal(n, Rat(0));
    Rat offset = lf.offset;
    for (std::size_t t = 0; t < d; ++t) {
      std::size_t col = (std::size_t)chart.pivot_cols[t];
      normal[col] = lf.normal[t];
      offset += lf.normal[t] * Rat((long)pts[0][col]);
    }
    out.facets.push_back(Halfspace{std::move(normal), std::move(offset)});
  }
  std::sort(out.facets.begin(), out.facets.end());
  return out;
}

std::vector<RationalPoint> cell_intersection_vertices(const HullDescription& desc,
                                                      const LatticePoint& cell_lo) {
  std::size_t n = cell_lo.size();
  require_geometry_dim((int)n);
  RatMat eq_rows;
  RatVec eq_rhs;
  for (const auto& [e, r] : desc.equalities) {
    eq_rows.push_back(e);
    eq_rhs.push_back(r);
  }
  std::size_t e = eq_rows.size();
  if (e > n) throw std::logic_error("cell_intersection_vertices: too many equalities");

  std::vector<std::pair<RatVec, Rat>> ineqs;
  for (const Halfspace& f : desc.facets) ineqs.emplace_back(f.normal, f.offset);
  for (std::size_t i = 0; i < n; ++i) {
    RatVec low(n, Rat(0)), high(n, Rat(0));
    low[i] = -1;
    high[i] = 1;
    ineqs.emplace_back(std::move(low), Rat(-(long)cell_lo[i]));
    ineqs.emplace_back(std::move(high), Rat((long)cell_lo[i] + 1));
  }

  std::set<RationalPoint, decltype(&lex_less)> found(&lex_less);
  for_each_subset(ineqs.size(), n - e, [&](const std::vector<std::size_t>& idx) {
    RatMat a = eq_rows;
    RatVec b = eq_rhs;
    for (std::size_t i : idx) {
      a.push_back(ineqs[i].first);
      b.push_back(ineqs[i].second);
    }
    auto v = solve_square(a, b);
    if (!v) return;
    for (const auto& [g, h] : ineqs)
      if (dot(g, *v) > h) return;
    found.insert(*v);
  });
  return std::vector<RationalPoint>(found.begin(), found.end());
}

bool hull_meets_cell(const LatticeSet& s, const LatticePoint& cell_lo) {
  if ((int)cell_lo.size() != s.dim())
    throw std::invalid_argument("hull_meets_cell: dimension mismatch");
  require_geometry_dim(s.dim());
  std::size_t n = cell_lo.size(), k = s.size();
  // lambda (k), u (n), w (n): sum lambda v - u = cell_lo, u + w = 1,
  // sum lambda = 1. Feasible iff conv(S) meets [cell_lo, cell_lo + 1].
  LpProblem p;
  std::size_t cols = k + 2 * n;
  p.a.assign(2 * n + 1, RatVec(cols, Rat(0)));
  p.b.assign(2 * n + 1, Rat(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) p.a[i][j] = Rat((long)s.points()[j][i]);
    p.a[i][k + i] = -1;
    p.b[i] = Rat((long)cell_lo[i]);
    p.a[n + i][k + i] = 1;
    p.a[n + i][k + n + i] = 1;
    p.b[n + i] = 1;
  }
  for (std::size_t j = 0; j < k; ++j) p.a[2 * n][j] = 1;
  p.b[2 * n] = 1;
  p.c.assign(cols, Rat(0));
  return solve_lp(p).status == LpStatus::kOptimal;
}

std::optional<RationalPoint> cell_hull_equality(const LatticeSet& s,
                                                const HullDescription& desc,
                                                const LatticePoint& cell_lo) {
  if ((int)cell_lo.size() != s.dim())
    throw std::invalid_argument("cell_hull_equality: dimension mismatch");
  require_geometry_dim(s.dim());
  LatticePoint cell_hi(cell_lo);
  for (Coord& c : cell_hi) ++c;
  LatticeSet in_cell(s.dim());
  bool all_corners = true;
  IntegerBox(cell_lo, cell_hi).for_each([&](const LatticePoint& z) {
    if (s.contains(z))
      in_cell.insert(z);
    else
      all_corners = false;
  });
  if (all_corners) return std::nullopt;
  for (const RationalPoint& v : cell_intersection_vertices(desc, cell_lo)) {
    if (in_cell.empty() || !hull_membership(v, in_cell).inside()) return v;
  }
  return std::nullopt;
}

std::optional<RationalPoint> cell_hull_equality(const LatticeSet& s,
                                                const LatticePoint& cell_lo) {
  return cell_hull_equality(s, hull_description(s), cell_lo);
}

}  // namespace dca
