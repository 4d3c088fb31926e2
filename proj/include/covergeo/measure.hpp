#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "covergeo/grid_set.hpp"

namespace covergeo {

/// One direction class of a Cauchy-Crofton neighborhood: the integer offset
/// (one representative of +/-e) and the weight per cut edge for cell size h.
struct CroftonEdge {
  std::array<int, 3> offset;
  double weight;
};

/// 2D: 16-neighborhood (8 classes), w_k = h dphi_k / (2 |e_k|) with dphi_k the
/// angular Voronoi cell of direction k. 3D: 26-neighborhood (13 classes) with
/// least-squares isotropic weights, w_k = h^2 c_k / |e_k|.
std::vector<CroftonEdge> crofton_neighborhood(int ndim, double h);

/// Crofton perimeter of a raw mask; cells beyond the array are outside.
double crofton_perimeter(const Geometry& g, std::span<const std::uint8_t> mask);

/// Isotropic perimeter estimate Per(E) by multi-direction line counting.
double perimeter(const GridSet& set);

/// Exact diameter of a cell cloud: max center-to-center distance plus the
/// cell extent h * sqrt(n).
struct Diameter {
  std::int64_t max_squared_cells = 0;  // exact, over cell centers
  double value = 0.0;                  // physical, with cell extent
};

/// Throws InputError on an empty list.
Diameter diameter(std::span<const CellCoord> cells, double h, int ndim);

}  // namespace covergeo
