#include "covergeo/grid_set.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "covergeo/errors.hpp"

namespace covergeo {

const char* to_string(Hypothesis h) {
  switch (h) {
    case Hypothesis::ResolutionFloor: return "resolution-floor";
    case Hypothesis::StabilityRadius: return "stability-radius";
    case Hypothesis::NotOpeningStable: return "not-opening-stable";
    case Hypothesis::ErosionEmpty: return "erosion-empty";
    case Hypothesis::InradiusTooSmall: return "inradius-too-small";
    case Hypothesis::RegionsTooSmall: return "regions-too-small";
    case Hypothesis::HoleTooLarge: return "hole-too-large";
    case Hypothesis::SymDiffTooLarge: return "sym-diff-too-large";
    case Hypothesis::DeltaTooLargeForScale: return "delta-too-large-for-scale";
    case Hypothesis::LambdaBelowThreshold: return "lambda-below-threshold";
    case Hypothesis::EmptyMinimizer: return "empty-minimizer";
    case Hypothesis::NotCompactlyInside: return "not-compactly-inside";
    case Hypothesis::ScaleTooCoarse: return "scale-too-coarse";
  }
  return "unknown";
}

HypothesisError::HypothesisError(Hypothesis which, const std::string& inequality)
    : std::domain_error(std::string(to_string(which)) + ": " + inequality),
      which_(which),
      inequality_(inequality) {}

Point Geometry::center(std::size_t idx) const {
  const CellCoord c = coords(idx);
  Point p{0.0, 0.0, 0.0};
  for (int a = 0; a < ndim; ++a) p[a] = origin[a] + (c[a] + 0.5) * h;
  return p;
}

double Geometry::cell_measure() const { return std::pow(h, ndim); }

std::array<long, 3> Geometry::lattice_offset() const {
  std::array<long, 3> off{0, 0, 0};
  for (int a = 0; a < ndim; ++a) off[a] = std::lround(origin[a] / h);
  return off;
}

bool Geometry::same_lattice(const Geometry& other) const {
  if (ndim != other.ndim || h != other.h) return false;
  for (int a = 0; a < ndim; ++a) {
    const double shift = (origin[a] - other.origin[a]) / h;
    if (std::abs(shift - std::round(shift)) > 1e-6) return false;
  }
  return true;
}

bool Geometry::operator==(const Geometry& other) const {
  if (ndim != other.ndim || dims != other.dims || h != other.h) return false;
  for (int a = 0; a < ndim; ++a) {
    if (std::abs(origin[a] - other.origin[a]) > 1e-9 * h) return false;
  }
  return true;
}

Geometry Geometry::padded(int cells) const {
  Geometry g = *this;
  for (int a = 0; a < ndim; ++a) {
    g.dims[a] += 2 * cells;
    g.origin[a] -= cells * h;
  }
  return g;
}

void Geometry::validate() const {
  if (ndim != 2 && ndim != 3) throw InputError("unsupported dimension " + std::to_string(ndim));
  if (!(h > 0.0) || !std::isfinite(h)) throw InputError("cell size h must be finite and > 0");
  for (int a = 0; a < 3; ++a) {
    if (dims[a] < 1) throw InputError("every axis needs at least one cell");
    if (a >= ndim && dims[a] != 1) throw InputError("inactive axis must have extent 1");
  }
}

Ball::Ball(Point c, double r) : center(c), radius(r) {
  if (!(r >= 0.0)) throw InputError("ball radius must be >= 0");
}

bool Ball::contains(const Point& p, int ndim) const {
  double d2 = 0.0;
  for (int a = 0; a < ndim; ++a) d2 += (p[a] - center[a]) * (p[a] - center[a]);
  return d2 <= radius * radius;
}

namespace {

bool on_rim(const Geometry& g, const CellCoord& c) {
  for (int a = 0; a < g.ndim; ++a) {
    if (c[a] == 0 || c[a] == g.dims[a] - 1) return true;
  }
  return false;
}

}  // namespace

GridSet::GridSet(Geometry geometry, std::vector<std::uint8_t> mask)
    : geom_(geometry), mask_(std::move(mask)) {
  geom_.validate();
  if (mask_.size() != geom_.cell_count()) throw InputError("mask size does not match dims");
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (!mask_[i]) continue;
    mask_[i] = 1;
    ++count_;
    if (on_rim(geom_, geom_.coords(i))) {
      throw InputError("set touches the outer rim of its grid (pad it first)");
    }
  }
}

GridSet GridSet::padded_from(Geometry geometry, std::vector<std::uint8_t> mask, int pad) {
  geometry.validate();
  if (mask.size() != geometry.cell_count()) throw InputError("mask size does not match dims");
  const Geometry big = geometry.padded(pad);
  std::vector<std::uint8_t> out(big.cell_count(), 0);
  const int pz = geometry.ndim == 3 ? pad : 0;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask[i]) continue;
    const CellCoord c = geometry.coords(i);
    out[big.index(c[0] + pad, c[1] + pad, c[2] + pz)] = 1;
  }
  return GridSet(big, std::move(out));
}

GridSet GridSet::empty_like(const Geometry& geometry) {
  return GridSet(geometry, std::vector<std::uint8_t>(geometry.cell_count(), 0));
}

std::vector<std::size_t> GridSet::cells() const {
  std::vector<std::size_t> out;
  out.reserve(count_);
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (mask_[i]) out.push_back(i);
  }
  return out;
}

GridSet GridSet::reembed(const Geometry& target) const {
  if (!geom_.same_lattice(target)) throw InputError("reembed: geometries are on different lattices");
  std::array<int, 3> shift{0, 0, 0};
  for (int a = 0; a < geom_.ndim; ++a) {
    shift[a] = static_cast<int>(std::lround((geom_.origin[a] - target.origin[a]) / geom_.h));
  }
  std::vector<std::uint8_t> out(target.cell_count(), 0);
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (!mask_[i]) continue;
    const CellCoord c = geom_.coords(i);
    const int x = c[0] + shift[0], y = c[1] + shift[1], z = c[2] + shift[2];
    if (!target.in_bounds(x, y, z)) throw InputError("reembed: set does not fit in target geometry");
    out[target.index(x, y, z)] = 1;
  }
  return GridSet(target, std::move(out));
}

namespace {

void require_same(const GridSet& a, const GridSet& b) {
  if (!(a.geometry() == b.geometry())) throw InputError("set operands have different geometries");
}

template <class Op>
GridSet combine(const GridSet& a, const GridSet& b, Op op) {
  require_same(a, b);
  std::vector<std::uint8_t> out(a.mask().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(a.mask()[i] != 0, b.mask()[i] != 0);
  return GridSet(a.geometry(), std::move(out));
}

}  // namespace

GridSet set_union(const GridSet& a, const GridSet& b) {
  return combine(a, b, [](bool x, bool y) { return x || y; });
}
GridSet set_intersection(const GridSet& a, const GridSet& b) {
  return combine(a, b, [](bool x, bool y) { return x && y; });
}
GridSet set_difference(const GridSet& a, const GridSet& b) {
  return combine(a, b, [](bool x, bool y) { return x && !y; });
}

std::size_t symmetric_difference_count(const GridSet& a, const GridSet& b) {
  require_same(a, b);
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.mask().size(); ++i) n += (a.mask()[i] != 0) != (b.mask()[i] != 0);
  return n;
}

double symmetric_difference_measure(const GridSet& a, const GridSet& b) {
  return static_cast<double>(symmetric_difference_count(a, b)) * a.geometry().cell_measure();
}

bool is_subset(const GridSet& a, const GridSet& b) {
  require_same(a, b);
  for (std::size_t i = 0; i < a.mask().size(); ++i) {
    if (a.mask()[i] && !b.mask()[i]) return false;
  }
  return true;
}

}  // namespace covergeo
