#pragma once

#include <map>
#include <string>

#include "covergeo/grid_set.hpp"

namespace covergeo {

// Test shapes, rasterized at cell centers. Every grid is the analytic bounding
// box snapped outward to multiples of h plus a one-cell empty rim, so a disk
// of radius 1 at h = 1/64 lands on a 130 x 130 array.

GridSet make_disk(double radius, double h, int ndim = 2);
GridSet make_two_disks(double radius, double separation, double h);
GridSet make_dumbbell(double radius, double separation, double neck_width, double h);
GridSet make_cube(double side, double h, int ndim = 2);

enum class HoleKind { Square, Bowtie };

/// U = disk(radius), A = hole, E = U \ A, all on one geometry. A square hole
/// of side a is [-a/2, a/2)^2 (exactly (a/h)^2 cells when a/h is an integer);
/// the bowtie is two a x a squares touching at the origin.
struct HoleShape {
  GridSet U;
  GridSet A;
  GridSet E;
};
HoleShape make_disk_minus_hole(double radius, double a, HoleKind kind, double h);

/// Parsed form of "kind:key=value,key=value". For kind "file" the single
/// value is a path ("file:masks/e.pbm").
struct ShapeSpec {
  std::string kind;
  std::map<std::string, std::string> params;
  double h = 0.0;

  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
};

ShapeSpec parse_shape(const std::string& text, double h);

/// Builds the set named by `spec`; for disk-minus-hole this is E.
GridSet make_shape(const ShapeSpec& spec);

}  // namespace covergeo
