#include "covergeo/morphology.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "covergeo/distance.hpp"
#include "covergeo/errors.hpp"

namespace covergeo {

namespace {

double radius_threshold(double r, double h) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw InputError("morphology radius must be finite and >= 0");
  const double t = r / h;
  return t * t;
}

bool any(std::span<const std::uint8_t> m) {
  return std::any_of(m.begin(), m.end(), [](std::uint8_t v) { return v != 0; });
}

// Squared distance (cells) from each cell center to the nearest lattice cell
// beyond the array.
SquaredCells squared_to_outside(const Geometry& g, const CellCoord& c) {
  SquaredCells best = kNoSource;
  for (int a = 0; a < g.ndim; ++a) {
    const SquaredCells lo = c[a] + 1;
    const SquaredCells hi = g.dims[a] - c[a];
    best = std::min({best, lo * lo, hi * hi});
  }
  return best;
}

bool any_of_zero(std::span<const std::uint8_t> m) {
  return std::any_of(m.begin(), m.end(), [](std::uint8_t v) { return v == 0; });
}

}  // namespace

namespace kernels {

// Squared distance (cells) from each cell of the view to the nearest cell not
// in it, counting the cells beyond the array unless they belong to the view.
std::vector<SquaredCells> inner_squared_distance(const MaskView& m) {
  const Geometry& g = m.geometry;
  std::vector<std::uint8_t> complement(m.mask.size());
  for (std::size_t i = 0; i < complement.size(); ++i) complement[i] = !m.mask[i];
  std::vector<SquaredCells> d2;
  if (any(complement)) {
    d2 = squared_edt(g, complement);
  } else {
    d2.assign(complement.size(), kNoSource);
  }
  if (!m.outside_in_set) {
    for (std::size_t i = 0; i < d2.size(); ++i) {
      if (m.mask[i]) d2[i] = std::min(d2[i], squared_to_outside(g, g.coords(i)));
    }
  }
  return d2;
}

std::vector<std::uint8_t> erode_mask(const MaskView& m, double r) {
  const double t = radius_threshold(r, m.geometry.h);
  const std::vector<SquaredCells> d2 = inner_squared_distance(m);
  std::vector<std::uint8_t> out(m.mask.size(), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = m.mask[i] && (d2[i] == kNoSource || static_cast<double>(d2[i]) > t);
  }
  return out;
}

std::vector<std::uint8_t> dilate_mask(const Geometry& g, std::span<const std::uint8_t> mask, double r) {
  const double t = radius_threshold(r, g.h);
  std::vector<std::uint8_t> out(mask.size(), 0);
  if (!any(mask)) return out;
  const std::vector<SquaredCells> d2 = squared_edt(g, mask);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<double>(d2[i]) <= t;
  return out;
}

// Union over s >= r of dilate(erode(., s), s). A cell x belongs to it iff some
// center c with D(c)^2 > r^2 has |x - c|^2 < D(c)^2, D being the distance to
// the nearest outside cell: the maximal inscribed balls of radius above r.
// Testing max_c (D(c)^2 - |x - c|^2) > 0 is one more envelope pass.
std::vector<std::uint8_t> open_mask(const MaskView& m, double r) {
  const double t = radius_threshold(r, m.geometry.h);
  const std::vector<SquaredCells> d2 = inner_squared_distance(m);
  std::vector<SquaredCells> f(d2.size(), kNoSource);
  bool any_center = false;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (m.mask[i] && d2[i] != kNoSource && static_cast<double>(d2[i]) > t) {
      f[i] = -d2[i];
      any_center = true;
    }
  }
  std::vector<std::uint8_t> out(m.mask.size(), 0);
  if (!any_center) {
    // Only an all-true view with the outside in the set has no finite D.
    if (m.outside_in_set && !any_of_zero(m.mask)) std::fill(out.begin(), out.end(), 1);
    return out;
  }
  const std::vector<SquaredCells> env = parabolic_envelope(m.geometry, std::move(f));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = env[i] < 0;
  return out;
}

}  // namespace kernels

GridSet erode(const GridSet& set, double r) {
  const MaskView m{set.geometry(), set.mask(), false};
  return GridSet(set.geometry(), kernels::erode_mask(m, r));
}

GridSet dilate(const GridSet& set, double r) {
  radius_threshold(r, set.h());
  const int pad = static_cast<int>(std::floor(r / set.h())) + 1;
  const GridSet big = set.with_padding(pad);
  return GridSet(big.geometry(), kernels::dilate_mask(big.geometry(), big.mask(), r));
}

GridSet open(const GridSet& set, double r) {
  const MaskView m{set.geometry(), set.mask(), false};
  return GridSet(set.geometry(), kernels::open_mask(m, r));
}

double grid_tolerance(const Geometry& g) { return 0.5 * g.h * std::sqrt(static_cast<double>(g.ndim)); }

bool stable_at(const MaskView& m, double r) {
  const Geometry& g = m.geometry;
  const std::vector<std::uint8_t> eroded = kernels::erode_mask(m, r);
  if (!any(eroded)) return !any(m.mask);
  const std::vector<SquaredCells> d2 = kernels::squared_edt(g, eroded);
  const double reach = (r + grid_tolerance(g)) / g.h;
  const double t = reach * reach * (1.0 + 1e-12);
  for (std::size_t i = 0; i < d2.size(); ++i) {
    if (m.mask[i] && static_cast<double>(d2[i]) > t) return false;
  }
  return true;
}

bool is_opening_stable(const GridSet& set, double r) {
  return stable_at(MaskView{set.geometry(), set.mask(), false}, r);
}

StabilityResult opening_stability(const MaskView& m, double r_max) {
  const double h = m.geometry.h;
  StabilityResult res;
  res.probe_step = 0.5 * h;
  res.search_limit = r_max;
  if (!(r_max >= h)) return res;

  const int last = static_cast<int>(std::floor((r_max - h) / res.probe_step + 1e-9));
  int k = 0;
  while (k <= last && stable_at(m, h + k * res.probe_step)) ++k;
  if (k > 0) res.radius = h + (k - 1) * res.probe_step;
  res.capped = k > last;
  return res;
}

double max_inner_distance(const GridSet& set) {
  if (set.empty()) return 0.0;
  return distance_transform(set, true).max_over(set);
}

double opening_stability_radius(const GridSet& set) {
  if (set.empty()) throw InputError("opening_stability_radius: empty set");
  const double inner = max_inner_distance(set);
  // At r >= inner the erosion is empty, so only probes strictly below count.
  const double r_max = std::nextafter(inner, 0.0);
  const MaskView m{set.geometry(), set.mask(), false};
  return opening_stability(m, r_max).radius;
}

StabilityResult complement_stability(const GridSet& set, double r_cap) {
  const int margin = static_cast<int>(std::ceil(r_cap / set.h())) + 2;
  const GridSet big = set.with_padding(margin);
  std::vector<std::uint8_t> comp(big.mask().size());
  for (std::size_t i = 0; i < comp.size(); ++i) comp[i] = !big.mask()[i];
  const MaskView m{big.geometry(), comp, true};
  return opening_stability(m, r_cap);
}

double eta_delta(const GridSet& set, double delta) {
  const GridSet core = erode(set, delta);
  if (core.empty()) {
    std::ostringstream os;
    os << "erosion empty at delta: erode(E, " << delta << ") has no cells";
    throw HypothesisError(Hypothesis::ErosionEmpty, os.str());
  }
  return distance_transform(core, false).max_over(set);
}

}  // namespace covergeo
