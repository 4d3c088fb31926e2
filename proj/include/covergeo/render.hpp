#pragma once

#include <string>

#include "covergeo/grid_set.hpp"
#include "covergeo/montecarlo.hpp"
#include "covergeo/partition.hpp"

namespace covergeo {

// Static SVG figures of 2D grids, one SVG unit per cell, y axis pointing up.
// Throws InputError for 3D input.

/// Regions filled with distinct colors, unlabeled cells blank.
std::string render_partition_svg(const Partition& p);

/// E filled gray with its boundary in black; Sigma's boundary in red.
std::string render_overlay_svg(const GridSet& E, const GridSet& sigma);

/// E filled gray, sample points as dots, balls of radius r as outlines.
std::string render_samples_svg(const GridSet& E, const SampleSet& samples, double r);

}  // namespace covergeo
