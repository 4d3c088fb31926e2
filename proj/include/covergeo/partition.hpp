#pragma once

#include <cstdint>
#include <vector>

#include "covergeo/grid_set.hpp"

namespace covergeo {

struct Region {
  std::int32_t id = 0;
  std::size_t cells = 0;
  double measure = 0.0;
  double diameter = 0.0;
  int seed_index = 0;    // position of the seed cube in lexicographic order
  CellCoord seed_cube{};  // cube coordinates on the l' lattice
};

/// Labeling of `base` into regions. labels[i] == 0 off the set; ids are 1-based
/// and stay stable under restriction (dropped regions leave gaps).
struct Partition {
  GridSet base;
  std::vector<std::int32_t> labels;
  std::vector<Region> regions;
  double delta = 0.0;
  double ell = 0.0;             // snapped cube side l' (multiple of h)
  double fatten_radius = 0.0;   // delta, or eta_delta for partition_with_eta
  double removed_measure = 0.0; // measure taken away by restrict_partition
};

/// Cube construction with l' = largest multiple of h <= delta/sqrt(n), seeds
/// = cubes meeting erode(E, delta) in lexicographic order, and R_k = cells
/// within delta of Q_k not claimed by an earlier region or by a later seed
/// cube. The cube lattice is anchored to cell edges, so each cell lies in
/// exactly one cube.
///
/// Throws HypothesisError: ResolutionFloor (delta < 4h), StabilityRadius
/// (delta above opening_stability_radius), ErosionEmpty.
Partition good_partition(const GridSet& E, double delta);

/// Same cubes, fattened by eta_delta instead of delta; needs only
/// delta < max_inner_distance(E) (InradiusTooSmall otherwise).
Partition partition_with_eta(const GridSet& E, double delta);

/// {R cap sub : R in P}, empty regions dropped. Throws InputError listing the
/// cells of `sub` outside P.base.
Partition restrict_partition(const Partition& P, const GridSet& sub);

struct RegionCheck {
  std::int32_t id = 0;
  double measure = 0.0;
  double diameter = 0.0;
  bool measure_ok = false;
  bool diameter_ok = false;
};

struct GoodCertificate {
  double delta = 0.0;
  double volume_floor = 0.0;    // delta^n / n^{n/2} - removed measure
  double diam_cap = 0.0;        // delta + 2 max(delta, fatten)
  double measure_slack = 0.0;   // l^n - (l - h)^n with l = delta / sqrt(n)
  double diameter_slack = 0.0;  // (sqrt(n) + 1) h
  double min_measure = 0.0;
  double max_diameter = 0.0;
  bool labels_conserved = false;
  std::vector<RegionCheck> regions;
  bool verdict = false;
};

GoodCertificate certify_good(const Partition& P, double delta);

struct AlmostCertificate {
  double alpha = 0.0;
  double measure_A = 0.0;
  double measure_E = 0.0;
  double coverage_ratio = 0.0;
  bool subset = false;
  bool verdict = false;          // A in E and |A| >= (1 - alpha)|E|
  bool literal_reading = false;  // |E \ A| >= (1 - alpha)|E|, as printed
};

/// A is P.base.
AlmostCertificate certify_almost(const Partition& P, const GridSet& E, double alpha);

}  // namespace covergeo
