#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "covergeo/grid_set.hpp"

namespace covergeo {

/// Squared distance in cell units; kNoSource marks cells with no source in
/// reach (only possible when the source is empty).
using SquaredCells = std::int64_t;
inline constexpr SquaredCells kNoSource = std::numeric_limits<SquaredCells>::max();

/// Per-cell Euclidean distance (physical units) from each cell center to the
/// nearest source cell center.
struct DistanceField {
  Geometry geometry;
  std::vector<SquaredCells> squared_cells;  // exact, in units of h^2
  std::vector<double> values;               // h * sqrt(squared_cells)

  double max_over(const GridSet& set) const;
};

namespace kernels {

/// Exact squared Euclidean distance transform (separable lower envelope of
/// parabolas). `source[i] != 0` marks source cells. Lines along each axis are
/// processed in parallel; the result does not depend on the thread count.
std::vector<SquaredCells> squared_edt(const Geometry& g, std::span<const std::uint8_t> source);

/// min over q of f(q) + |p - q|^2 (cells) for every p; kNoSource entries of
/// `f` take no part. Values may be negative. squared_edt is the case f = 0 on
/// the source.
std::vector<SquaredCells> parabolic_envelope(const Geometry& g, std::vector<SquaredCells> f);

/// Single-threaded reference for `squared_edt`; bit-identical output.
std::vector<SquaredCells> squared_edt_serial(const Geometry& g, std::span<const std::uint8_t> source);

}  // namespace kernels

/// Distance from every cell to the set (from_complement = false) or to its
/// complement (from_complement = true). Throws InputError("empty source")
/// when the chosen source region has no cells.
DistanceField distance_transform(const GridSet& set, bool from_complement);

}  // namespace covergeo
