#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace covergeo {

using Point = std::array<double, 3>;
using CellCoord = std::array<int, 3>;

/// Regular lattice of `dims` cells with edge length `h`; cell (0,0,0) has its
/// lower corner at `origin`. Unused axes (z in 2D) have extent 1.
struct Geometry {
  int ndim = 2;
  std::array<int, 3> dims{1, 1, 1};
  double h = 1.0;
  Point origin{0.0, 0.0, 0.0};

  std::size_t cell_count() const {
    return static_cast<std::size_t>(dims[0]) * dims[1] * dims[2];
  }
  std::size_t index(int i, int j, int k = 0) const {
    return (static_cast<std::size_t>(k) * dims[1] + j) * dims[0] + i;
  }
  CellCoord coords(std::size_t idx) const {
    const int i = static_cast<int>(idx % dims[0]);
    const std::size_t rest = idx / dims[0];
    return {i, static_cast<int>(rest % dims[1]), static_cast<int>(rest / dims[1])};
  }
  bool in_bounds(int i, int j, int k) const {
    return i >= 0 && j >= 0 && k >= 0 && i < dims[0] && j < dims[1] && k < dims[2];
  }
  Point center(std::size_t idx) const;
  double cell_measure() const;

  /// Integer offset of cell (0,0,0) on the global lattice hZ^n.
  std::array<long, 3> lattice_offset() const;

  /// Same lattice (h, alignment), possibly different extents.
  bool same_lattice(const Geometry& other) const;
  bool operator==(const Geometry& other) const;

  /// Grow by `cells` on every active axis, shifting the origin.
  Geometry padded(int cells) const;

  /// Throws InputError unless ndim in {2,3}, h finite and > 0, dims >= 1.
  void validate() const;
};

class GridSet;

/// Closed ball B(center, radius); radius >= 0.
struct Ball {
  Point center{0.0, 0.0, 0.0};
  double radius = 0.0;

  Ball() = default;
  Ball(Point c, double r);
  bool contains(const Point& p, int ndim) const;
};

/// Binary indicator of a bounded open set sampled at cell centers.
///
/// The outer one-cell rim is always false so the complement is nonempty
/// inside the array. Constructors throw InputError when that is violated;
/// `padded_from` adds the rim instead.
class GridSet {
 public:
  GridSet() = default;
  GridSet(Geometry geometry, std::vector<std::uint8_t> mask);

  static GridSet padded_from(Geometry geometry, std::vector<std::uint8_t> mask, int pad = 1);
  static GridSet empty_like(const Geometry& geometry);

  const Geometry& geometry() const { return geom_; }
  int ndim() const { return geom_.ndim; }
  double h() const { return geom_.h; }
  std::span<const std::uint8_t> mask() const { return mask_; }
  bool contains(std::size_t idx) const { return mask_[idx] != 0; }
  bool contains(int i, int j, int k = 0) const {
    return geom_.in_bounds(i, j, k) && mask_[geom_.index(i, j, k)] != 0;
  }

  std::size_t count() const { return count_; }
  bool empty() const { return count_ == 0; }
  double measure() const { return static_cast<double>(count_) * geom_.cell_measure(); }
  std::vector<std::size_t> cells() const;

  /// Copy onto another geometry of the same lattice. Throws if a true cell
  /// would fall outside `target` or onto its rim.
  GridSet reembed(const Geometry& target) const;
  GridSet with_padding(int cells) const { return reembed(geom_.padded(cells)); }

  bool operator==(const GridSet& other) const {
    return geom_ == other.geom_ && mask_ == other.mask_;
  }

 private:
  Geometry geom_;
  std::vector<std::uint8_t> mask_;
  std::size_t count_ = 0;
};

// Cellwise set algebra. Operands must share the geometry exactly.
GridSet set_union(const GridSet& a, const GridSet& b);
GridSet set_intersection(const GridSet& a, const GridSet& b);
GridSet set_difference(const GridSet& a, const GridSet& b);
std::size_t symmetric_difference_count(const GridSet& a, const GridSet& b);
double symmetric_difference_measure(const GridSet& a, const GridSet& b);
bool is_subset(const GridSet& a, const GridSet& b);

}  // namespace covergeo
