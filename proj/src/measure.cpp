#include "covergeo/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "covergeo/errors.hpp"

namespace covergeo {

namespace {

using Offset = std::array<int, 3>;

double norm(const Offset& e) { return std::sqrt(double(e[0] * e[0] + e[1] * e[1] + e[2] * e[2])); }

// Angular share of each of the 8 planar direction classes (sums to pi). The
// response to a straight edge ranges over [0.985, 1.013] with direction.
std::vector<std::pair<Offset, double>> planar_classes() {
  const std::vector<Offset> dirs = {{1, 0, 0},  {2, 1, 0},  {1, 1, 0},   {1, 2, 0},
                                    {0, 1, 0},  {-1, 2, 0}, {-1, 1, 0},  {-2, 1, 0}};
  std::vector<double> ang;
  for (const auto& e : dirs) ang.push_back(std::atan2(double(e[1]), double(e[0])));
  const std::size_t n = dirs.size();
  std::vector<std::pair<Offset, double>> out;
  for (std::size_t k = 0; k < n; ++k) {
    const double prev = k == 0 ? ang[n - 1] - std::numbers::pi : ang[k - 1];
    const double next = k + 1 == n ? ang[0] + std::numbers::pi : ang[k + 1];
    out.push_back({dirs[k], 0.5 * (next - prev)});
  }
  return out;
}

// Per-class coefficients c for the 13 direction pairs of the 26-neighborhood,
// chosen so that sum_k c_k |e_k/|e_k| . n| is as close to 1 as possible in the
// least-squares sense over unit normals n (Fibonacci point set). Coefficients
// are shared within each symmetry orbit (axis, face diagonal, body diagonal).
// Thirteen directions cannot be isotropic: the response ranges over about
// [0.926, 1.022], lowest for axis-aligned normals.
std::vector<std::pair<Offset, double>> spatial_classes() {
  std::vector<Offset> dirs;
  for (int z = -1; z <= 1; ++z) {
    for (int y = -1; y <= 1; ++y) {
      for (int x = -1; x <= 1; ++x) {
        if (x == 0 && y == 0 && z == 0) continue;
        // One representative per +/- pair: first nonzero coordinate positive.
        const int first = x != 0 ? x : y != 0 ? y : z;
        if (first > 0) dirs.push_back({x, y, z});
      }
    }
  }
  auto orbit = [](const Offset& e) { return std::abs(e[0]) + std::abs(e[1]) + std::abs(e[2]) - 1; };

  constexpr int kPoints = 20000;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  double ata[3][3] = {}, atb[3] = {};
  for (int i = 0; i < kPoints; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / kPoints;
    const double rho = std::sqrt(1.0 - z * z);
    const double u[3] = {rho * std::cos(golden * i), rho * std::sin(golden * i), z};
    double g[3] = {0.0, 0.0, 0.0};
    for (const auto& e : dirs) g[orbit(e)] += std::abs(u[0] * e[0] + u[1] * e[1] + u[2] * e[2]) / norm(e);
    for (int r = 0; r < 3; ++r) {
      atb[r] += g[r];
      for (int c = 0; c < 3; ++c) ata[r][c] += g[r] * g[c];
    }
  }
  // 3x3 normal equations by Cramer's rule.
  auto det = [](const double m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  const double d = det(ata);
  double coef[3];
  for (int k = 0; k < 3; ++k) {
    double m[3][3];
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) m[r][c] = c == k ? atb[r] : ata[r][c];
    }
    coef[k] = det(m) / d;
  }
  std::vector<std::pair<Offset, double>> out;
  for (const auto& e : dirs) out.push_back({e, coef[orbit(e)]});
  return out;
}

}  // namespace

std::vector<CroftonEdge> crofton_neighborhood(int ndim, double h) {
  static const auto planar = planar_classes();
  static const auto spatial = spatial_classes();
  std::vector<CroftonEdge> out;
  if (ndim == 2) {
    for (const auto& [e, dphi] : planar) out.push_back({e, h * dphi / (2.0 * norm(e))});
  } else if (ndim == 3) {
    for (const auto& [e, c] : spatial) out.push_back({e, h * h * c / norm(e)});
  } else {
    throw InputError("unsupported dimension");
  }
  return out;
}

double crofton_perimeter(const Geometry& g, std::span<const std::uint8_t> mask) {
  const auto edges = crofton_neighborhood(g.ndim, g.h);
  auto inside = [&](int i, int j, int k) { return g.in_bounds(i, j, k) && mask[g.index(i, j, k)] != 0; };
  double total = 0.0;
  for (const auto& edge : edges) {
    const auto& e = edge.offset;
    std::size_t cuts = 0;
    // Count unordered pairs {p, p+e} with exactly one endpoint inside. Pairs
    // with one endpoint beyond the array are included.
    for (int k = -std::abs(e[2]); k < g.dims[2] + std::abs(e[2]); ++k) {
      for (int j = -std::abs(e[1]); j < g.dims[1] + std::abs(e[1]); ++j) {
        for (int i = -std::abs(e[0]); i < g.dims[0] + std::abs(e[0]); ++i) {
          cuts += inside(i, j, k) != inside(i + e[0], j + e[1], k + e[2]);
        }
      }
    }
    total += edge.weight * static_cast<double>(cuts);
  }
  return total;
}

double perimeter(const GridSet& set) {
  if (set.empty()) return 0.0;
  return crofton_perimeter(set.geometry(), set.mask());
}

namespace {

std::int64_t sq_dist(const CellCoord& a, const CellCoord& b) {
  std::int64_t s = 0;
  for (int i = 0; i < 3; ++i) {
    const std::int64_t d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

std::int64_t max_pairwise(const std::vector<CellCoord>& pts) {
  std::int64_t best = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, sq_dist(pts[i], pts[j]));
  }
  return best;
}

std::int64_t cross(const CellCoord& o, const CellCoord& a, const CellCoord& b) {
  return std::int64_t(a[0] - o[0]) * (b[1] - o[1]) - std::int64_t(a[1] - o[1]) * (b[0] - o[0]);
}

// Andrew's monotone chain; collinear points dropped.
std::vector<CellCoord> convex_hull_2d(std::vector<CellCoord> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<CellCoord> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

// A hull vertex is extreme along every axis-parallel line through it, so only
// per-line minima and maxima can attain the diameter.
std::vector<CellCoord> axis_extremes(const std::vector<CellCoord>& pts, int ndim) {
  std::vector<CellCoord> cur = pts;
  for (int axis = 0; axis < ndim; ++axis) {
    auto key_less = [axis](const CellCoord& a, const CellCoord& b) {
      for (int d = 0; d < 3; ++d) {
        if (d == axis) continue;
        if (a[d] != b[d]) return a[d] < b[d];
      }
      return a[axis] < b[axis];
    };
    std::sort(cur.begin(), cur.end(), key_less);
    std::vector<CellCoord> next;
    for (std::size_t i = 0; i < cur.size();) {
      std::size_t j = i;
      auto same_line = [axis](const CellCoord& a, const CellCoord& b) {
        for (int d = 0; d < 3; ++d) {
          if (d != axis && a[d] != b[d]) return false;
        }
        return true;
      };
      while (j + 1 < cur.size() && same_line(cur[i], cur[j + 1])) ++j;
      next.push_back(cur[i]);
      if (j != i) next.push_back(cur[j]);
      i = j + 1;
    }
    cur.swap(next);
  }
  return cur;
}

}  // namespace

Diameter diameter(std::span<const CellCoord> cells, double h, int ndim) {
  if (cells.empty()) throw InputError("diameter of an empty cell list");
  std::vector<CellCoord> pts(cells.begin(), cells.end());
  if (ndim == 2) {
    for (auto& p : pts) p[2] = 0;
    pts = convex_hull_2d(std::move(pts));
  } else {
    pts = axis_extremes(pts, ndim);
  }
  Diameter d;
  d.max_squared_cells = max_pairwise(pts);
  d.value = h * std::sqrt(static_cast<double>(d.max_squared_cells)) + h * std::sqrt(double(ndim));
  return d;
}

}  // namespace covergeo
