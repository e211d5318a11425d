#include "lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace dca {

namespace {

Coord floor_div(Coord a, Coord b) {
  // b > 0 in every call site.
  Coord q = a / b, r = a % b;
  return (r != 0 && (r < 0) != (b < 0)) ? q - 1 : q;
}

Coord ceil_div(Coord a, Coord b) { return -floor_div(-a, b); }

void require_dim(std::size_t got, std::size_t want, const char* what) {
  if (got != want)
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

}  // namespace

RationalPoint to_rational(const LatticePoint& x) {
  RationalPoint r;
  r.reserve(x.size());
  for (Coord c : x) r.emplace_back((long)c);
  return r;
}

LatticePoint to_lattice(const RationalPoint& x) {
  LatticePoint r;
  r.reserve(x.size());
  for (const Rat& c : x) {
    if (!is_integral(c))
      throw std::invalid_argument("point has a fractional coordinate");
    r.push_back(floor_to_int(c));
  }
  return r;
}

Coord chebyshev_distance(const LatticePoint& x, const LatticePoint& y) {
  require_dim(y.size(), x.size(), "chebyshev_distance");
  Coord m = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

IntegerBox::IntegerBox(LatticePoint lo, LatticePoint hi)
    : lo_(std::move(lo)), hi_(std::move(hi)) {
  require_dim(hi_.size(), lo_.size(), "IntegerBox");
  if (lo_.empty()) throw std::invalid_argument("IntegerBox: dimension zero");
  for (std::size_t i = 0; i < lo_.size(); ++i)
    if (lo_[i] > hi_[i])
      throw std::invalid_argument("IntegerBox: lo exceeds hi");
}

std::uint64_t IntegerBox::size() const {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < lo_.size(); ++i) {
    std::uint64_t w = (std::uint64_t)(hi_[i] - lo_[i]) + 1;
    if (n > UINT64_MAX / w) throw std::overflow_error("IntegerBox: size overflow");
    n *= w;
  }
  return n;
}

bool IntegerBox::contains(const LatticePoint& x) const {
  require_dim(x.size(), lo_.size(), "IntegerBox::contains");
  for (std::size_t i = 0; i < lo_.size(); ++i)
    if (x[i] < lo_[i] || x[i] > hi_[i]) return false;
  return true;
}

bool IntegerBox::contains(const RationalPoint& x) const {
  require_dim(x.size(), lo_.size(), "IntegerBox::contains");
  for (std::size_t i = 0; i < lo_.size(); ++i)
    if (x[i] < Rat((long)lo_[i]) || x[i] > Rat((long)hi_[i])) return false;
  return true;
}

std::uint64_t IntegerBox::index_of(const LatticePoint& x) const {
  if (!contains(x)) throw std::invalid_argument("IntegerBox::index_of: outside");
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < lo_.size(); ++i) {
    std::uint64_t w = (std::uint64_t)(hi_[i] - lo_[i]) + 1;
    idx = idx * w + (std::uint64_t)(x[i] - lo_[i]);
  }
  return idx;
}

LatticePoint IntegerBox::point_at(std::uint64_t index) const {
  LatticePoint x(lo_.size());
  for (std::size_t k = lo_.size(); k-- > 0;) {
    std::uint64_t w = (std::uint64_t)(hi_[k] - lo_[k]) + 1;
    x[k] = lo_[k] + (Coord)(index % w);
    index /= w;
  }
  if (index != 0) throw std::invalid_argument("IntegerBox::point_at: index out of range");
  return x;
}

void IntegerBox::for_each(const std::function<void(const LatticePoint&)>& fn) const {
  LatticePoint x = lo_;
  for (;;) {
    fn(x);
    std::size_t k = lo_.size();
    while (k-- > 0) {
      if (x[k] < hi_[k]) {
        ++x[k];
        for (std::size_t j = k + 1; j < lo_.size(); ++j) x[j] = lo_[j];
        break;
      }
      if (k == 0) return;
    }
  }
}

LatticeSet::LatticeSet(int dim) : dim_(dim) {
  if (dim <= 0) throw std::invalid_argument("LatticeSet: dimension must be positive");
}

LatticeSet::LatticeSet(int dim, std::vector<LatticePoint> points) : LatticeSet(dim) {
  for (const auto& p : points) require_dim(p.size(), (std::size_t)dim, "LatticeSet");
  std::sort(points.begin(), points.end());
  if (std::adjacent_find(points.begin(), points.end()) != points.end())
    throw std::invalid_argument("LatticeSet: duplicate point");
  points_ = std::move(points);
}

bool LatticeSet::contains(const LatticePoint& x) const {
  require_dim(x.size(), (std::size_t)dim_, "LatticeSet::contains");
  return std::binary_search(points_.begin(), points_.end(), x);
}

void LatticeSet::insert(LatticePoint x) {
  require_dim(x.size(), (std::size_t)dim_, "LatticeSet::insert");
  auto it = std::lower_bound(points_.begin(), points_.end(), x);
  if (it != points_.end() && *it == x) return;
  points_.insert(it, std::move(x));
}

IntegerBox LatticeSet::bounding_box() const {
  if (points_.empty())
    throw std::invalid_argument("LatticeSet::bounding_box: empty set");
  LatticePoint lo = points_[0], hi = points_[0];
  for (const auto& p : points_)
    for (int i = 0; i < dim_; ++i) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  return IntegerBox(lo, hi);
}

DiscreteFunction::DiscreteFunction(IntegerBox box, std::vector<Ext> values)
    : box_(std::move(box)), values_(std::move(values)) {
  if (values_.size() != box_.size())
    throw std::invalid_argument("DiscreteFunction: value table does not match box");
  bool any_finite = false;
  for (const Ext& v : values_) any_finite = any_finite || v.finite();
  if (!any_finite)
    throw std::invalid_argument("DiscreteFunction: effective domain is empty");
}

DiscreteFunction DiscreteFunction::constant(const IntegerBox& box, const Rat& value) {
  return DiscreteFunction(box, std::vector<Ext>(box.size(), Ext(value)));
}

DiscreteFunction DiscreteFunction::indicator(const LatticeSet& set, const IntegerBox& box) {
  if (set.dim() != box.dim())
    throw std::invalid_argument("indicator: dimension mismatch");
  std::vector<Ext> vals(box.size(), Ext::infinity());
  for (const auto& p : set.points()) {
    if (!box.contains(p))
      throw std::invalid_argument("indicator: set point outside box");
    vals[box.index_of(p)] = Ext(0);
  }
  return DiscreteFunction(box, std::move(vals));
}

Ext DiscreteFunction::at(const LatticePoint& x) const {
  require_dim(x.size(), (std::size_t)dim(), "DiscreteFunction::at");
  if (!box_.contains(x)) return Ext::infinity();
  return values_[box_.index_of(x)];
}

void DiscreteFunction::set(const LatticePoint& x, Ext v) {
  if (!box_.contains(x))
    throw std::invalid_argument("DiscreteFunction::set: outside box");
  values_[box_.index_of(x)] = std::move(v);
}

LatticeSet DiscreteFunction::domain() const {
  LatticeSet dom(dim());
  box_.for_each([&](const LatticePoint& x) {
    if (values_[box_.index_of(x)].finite()) dom.insert(x);
  });
  return dom;
}

std::uint64_t DiscreteFunction::domain_size() const {
  std::uint64_t n = 0;
  for (const Ext& v : values_)
    if (v.finite()) ++n;
  return n;
}

LatticePoint StepDecomposition::apply(const LatticePoint& x) const {
  LatticePoint y = x;
  for (std::size_t k = 0; k < raise.size(); ++k) {
    for (int i : raise[k]) ++y[i];
    for (int i : lower[k]) --y[i];
  }
  return y;
}

LatticePoint StepDecomposition::partial(int dim, const std::vector<int>& levels) const {
  LatticePoint d(dim, 0);
  for (int k : levels) {
    for (int i : raise[(std::size_t)k]) ++d[i];
    for (int i : lower[(std::size_t)k]) --d[i];
  }
  return d;
}

LatticeSet integral_neighborhood(const RationalPoint& x) {
  if (x.empty()) throw std::invalid_argument("integral_neighborhood: dimension zero");
  LatticePoint lo(x.size()), hi(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    lo[i] = floor_to_int(x[i]);
    hi[i] = ceil_to_int(x[i]);
  }
  LatticeSet nbhd((int)x.size());
  IntegerBox(lo, hi).for_each([&](const LatticePoint& z) { nbhd.insert(z); });
  return nbhd;
}

std::pair<LatticePoint, LatticePoint> rounded_midpoints(const LatticePoint& x,
                                                        const LatticePoint& y) {
  require_dim(y.size(), x.size(), "rounded_midpoints");
  LatticePoint up(x.size()), dn(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    Coord s = x[i] + y[i];
    dn[i] = floor_div(s, 2);
    up[i] = ceil_div(s, 2);
  }
  return {up, dn};
}

StepDecomposition decompose_difference(const LatticePoint& x, const LatticePoint& y) {
  require_dim(y.size(), x.size(), "decompose_difference");
  StepDecomposition d;
  d.m = chebyshev_distance(x, y);
  d.raise.resize((std::size_t)d.m);
  d.lower.resize((std::size_t)d.m);
  for (Coord k = 1; k <= d.m; ++k) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      Coord diff = y[i] - x[i];
      if (diff >= d.m + 1 - k) d.raise[(std::size_t)(k - 1)].push_back((int)i);
      if (diff <= -k) d.lower[(std::size_t)(k - 1)].push_back((int)i);
    }
  }
  return d;
}

namespace {

struct TransformVisitor {
  const DiscreteFunction& f;

  DiscreteFunction operator()(const ShiftDomain& t) const {
    require_dim(t.offset.size(), (std::size_t)f.dim(), "shift");
    LatticePoint lo(f.dim()), hi(f.dim());
    for (int i = 0; i < f.dim(); ++i) {
      lo[i] = f.box().lo()[i] - t.offset[i];
      hi[i] = f.box().hi()[i] - t.offset[i];
    }
    IntegerBox box(lo, hi);
    std::vector<Ext> vals(box.size());
    box.for_each([&](const LatticePoint& x) {
      LatticePoint z(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + t.offset[i];
      vals[box.index_of(x)] = f.at(z);
    });
    return DiscreteFunction(box, std::move(vals));
  }

  DiscreteFunction operator()(const NegateVariables&) const {
    LatticePoint lo(f.dim()), hi(f.dim());
    for (int i = 0; i < f.dim(); ++i) {
      lo[i] = -f.box().hi()[i];
      hi[i] = -f.box().lo()[i];
    }
    IntegerBox box(lo, hi);
    std::vector<Ext> vals(box.size());
    box.for_each([&](const LatticePoint& x) {
      LatticePoint z(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) z[i] = -x[i];
      vals[box.index_of(x)] = f.at(z);
    });
    return DiscreteFunction(box, std::move(vals));
  }

  DiscreteFunction operator()(const ScaleValues& t) const {
    if (t.factor < 0)
      throw std::invalid_argument("scale-values: factor must be nonnegative");
    std::vector<Ext> vals = f.values();
    for (Ext& v : vals) v = t.factor * v;
    return DiscreteFunction(f.box(), std::move(vals));
  }

  DiscreteFunction operator()(const SubtractLinear& t) const {
    require_dim(t.price.size(), (std::size_t)f.dim(), "subtract-linear");
    std::vector<Ext> vals(f.box().size());
    f.box().for_each([&](const LatticePoint& x) {
      Ext v = f.at(x);
      if (v.finite()) {
        Rat lin = 0;
        for (int i = 0; i < f.dim(); ++i) lin += t.price[(std::size_t)i] * Rat((long)x[i]);
        v = Ext(v.value() - lin);
      }
      vals[f.box().index_of(x)] = v;
    });
    return DiscreteFunction(f.box(), std::move(vals));
  }

  DiscreteFunction operator()(const ScaleDomain& t) const {
    if (t.factor < 1)
      throw std::invalid_argument("scale-domain: factor must be at least 1");
    LatticePoint lo(f.dim()), hi(f.dim());
    for (int i = 0; i < f.dim(); ++i) {
      lo[i] = ceil_div(f.box().lo()[i], t.factor);
      hi[i] = floor_div(f.box().hi()[i], t.factor);
      if (lo[i] > hi[i])
        throw std::invalid_argument("scale-domain: scaled box is empty");
    }
    IntegerBox box(lo, hi);
    std::vector<Ext> vals(box.size());
    box.for_each([&](const LatticePoint& x) {
      LatticePoint z(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) z[i] = t.factor * x[i];
      vals[box.index_of(x)] = f.at(z);
    });
    return DiscreteFunction(box, std::move(vals));
  }

  DiscreteFunction operator()(const RestrictCoordinates& t) const {
    if (t.keep.empty())
      throw std::invalid_argument("restrict: must keep at least one coordinate");
    for (std::size_t k = 0; k < t.keep.size(); ++k) {
      if (t.keep[k] < 0 || t.keep[k] >= f.dim())
        throw std::invalid_argument("restrict: coordinate index out of range");
      if (k > 0 && t.keep[k] <= t.keep[k - 1])
        throw std::invalid_argument("restrict: kept coordinates must be strictly increasing");
    }
    std::vector<bool> kept((std::size_t)f.dim(), false);
    for (int i : t.keep) kept[(std::size_t)i] = true;
    for (int i = 0; i < f.dim(); ++i)
      if (!kept[(std::size_t)i] && (f.box().lo()[i] > 0 || f.box().hi()[i] < 0))
        throw std::invalid_argument("restrict: box does not contain 0 on a dropped coordinate");
    LatticePoint lo, hi;
    for (int i : t.keep) {
      lo.push_back(f.box().lo()[i]);
      hi.push_back(f.box().hi()[i]);
    }
    IntegerBox box(lo, hi);
    std::vector<Ext> vals(box.size());
    box.for_each([&](const LatticePoint& u) {
      LatticePoint z((std::size_t)f.dim(), 0);
      for (std::size_t k = 0; k < t.keep.size(); ++k) z[(std::size_t)t.keep[k]] = u[k];
      vals[box.index_of(u)] = f.at(z);
    });
    return DiscreteFunction(box, std::move(vals));
  }
};

}  // namespace

DiscreteFunction basic_transform(const DiscreteFunction& f, const BasicTransform& t) {
  return std::visit(TransformVisitor{f}, t);
}

}  // namespace dca
