#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

#include "covergeo/grid_set.hpp"

namespace covergeo {

// On-disk masks are a PBM bitmap plus a text sidecar `<stem>.hdr` holding
// key=value lines (format, n, dims, h, origin, encoding). PBM row 0 is the
// top row (largest j). 3D masks stack their z-slices vertically, slice 0 on top.

std::string encode_pbm(const GridSet& set);
std::string encode_header(const Geometry& g);

/// Writes `path` (PBM, P4) and the sidecar next to it.
void write_mask(const GridSet& set, const std::filesystem::path& path);

/// Reads P1 or P4 plus the sidecar. Pads by one cell when the rim is not
/// clear. Throws InputError on malformed input.
GridSet read_mask(const std::filesystem::path& path);

/// Parses the in-memory pair; used by read_mask.
GridSet decode_mask(const std::string& pbm, const std::string& header);

std::filesystem::path header_path(const std::filesystem::path& pbm);

/// 16-bit binary graymap (P5, maxval 65535) of region labels, same row order
/// as the PBM writer.
std::string encode_label_pgm(const Geometry& g, std::span<const std::int32_t> labels);
void write_label_pgm(const Geometry& g, std::span<const std::int32_t> labels,
                     const std::filesystem::path& path);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

}  // namespace covergeo
