#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "covergeo/grid_set.hpp"

namespace covergeo {

// Structuring element is the closed discrete ball {v : |v| h <= r}. Erosion
// keeps cells whose distance to the complement is > r (strict), dilation adds
// cells within distance <= r of the set.
//
// Digital balls are not openings of one another (the r = 1.2 ball is a plus,
// the r = 1.5 ball a 3x3 square), so dilate(erode(S, r), r) is not monotone in
// r. `open` is the union of those openings over all radii s >= r. That is
// still an opening (idempotent, anti-extensive, increasing), it is
// nonincreasing in r, and it agrees with dilate(erode) for continuum sets.

GridSet erode(const GridSet& set, double r);

/// Result geometry is padded by floor(r/h) + 1 cells so nothing clips.
GridSet dilate(const GridSet& set, double r);

/// Union over s >= r of dilate(erode(set, s), s), on the input's geometry.
GridSet open(const GridSet& set, double r);

/// A binary mask that may stand for an unbounded set: with
/// `outside_in_set` the cells beyond the array belong to the set (e.g. the
/// complement of a bounded set). The array must carry enough margin for the
/// radii in use.
struct MaskView {
  const Geometry& geometry;
  std::span<const std::uint8_t> mask;
  bool outside_in_set = false;
};

namespace kernels {
std::vector<std::uint8_t> erode_mask(const MaskView& m, double r);
std::vector<std::uint8_t> dilate_mask(const Geometry& g, std::span<const std::uint8_t> mask, double r);
std::vector<std::uint8_t> open_mask(const MaskView& m, double r);
}  // namespace kernels

/// Cell-center sampling puts a point up to h sqrt(n)/2 from its cell center;
/// stability tests allow this much slack when re-dilating the erosion.
double grid_tolerance(const Geometry& g);

/// True when every cell of the view lies within r + grid_tolerance of
/// erode(view, r): set == open(set, r) at grid resolution. The exact digital
/// opening of a digital disk already loses isolated boundary cells, which this
/// slack absorbs, while convex corners still fail once r grows past a few h.
bool stable_at(const MaskView& m, double r);

/// Probe radii h, 1.5h, 2h, ... (step h/2) up to `r_max`, scanned upward; the
/// result is the last probe before the first unstable one. Discrete stability
/// is not monotone in r, so a bisection could skip a failure.
struct StabilityResult {
  double radius = 0.0;      // largest certified-stable probe, 0 if none
  double probe_step = 0.0;  // h / 2
  double search_limit = 0.0;
  bool capped = false;      // radius reached search_limit
};

StabilityResult opening_stability(const MaskView& m, double r_max);

/// Largest probe r with stable_at(set, r) for all probes <= r; 0 if the set
/// is already unstable at r = h. Requires a nonempty set.
double opening_stability_radius(const GridSet& set);

/// Stability radius of the complement of `set`, searched up to `r_cap`.
StabilityResult complement_stability(const GridSet& set, double r_cap);

/// stable_at for a bounded set.
bool is_opening_stable(const GridSet& set, double r);

/// sup over cells of E of the distance to erode(E, delta).
/// Throws HypothesisError(ErosionEmpty) when the erosion is empty.
double eta_delta(const GridSet& set, double delta);

/// sup over cells of E of the distance to the complement (inradius proxy).
double max_inner_distance(const GridSet& set);

}  // namespace covergeo
