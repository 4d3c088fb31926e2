#include "covergeo/shapes.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "covergeo/errors.hpp"
#include "covergeo/mask_io.hpp"

namespace covergeo {

namespace {

constexpr double kEps = 1e-9;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << what << " must be finite and > 0 (got " << v << ")";
    throw InputError(os.str());
  }
}

// `inside` takes cell-center coordinates in units of h. `lo`/`hi` bound the
// shape in physical units.
GridSet rasterize(int ndim, double h, const Point& lo, const Point& hi,
                  const std::function<bool(const Point&)>& inside) {
  require_positive(h, "h");
  Geometry g;
  g.ndim = ndim;
  g.h = h;
  std::array<long, 3> first{0, 0, 0};
  for (int a = 0; a < ndim; ++a) {
    const long l = static_cast<long>(std::floor(lo[a] / h + kEps));
    const long u = static_cast<long>(std::ceil(hi[a] / h - kEps));
    first[a] = l - 1;
    g.dims[a] = static_cast<int>(u - l + 2);
    g.origin[a] = static_cast<double>(first[a]) * h;
  }
  g.validate();
  std::vector<std::uint8_t> mask(g.cell_count(), 0);
  for (std::size_t idx = 0; idx < mask.size(); ++idx) {
    const CellCoord c = g.coords(idx);
    Point p{0.0, 0.0, 0.0};
    for (int a = 0; a < ndim; ++a) p[a] = static_cast<double>(first[a] + c[a]) + 0.5;
    mask[idx] = inside(p);
  }
  GridSet out(g, std::move(mask));
  if (out.empty()) throw InputError("shape has no cells at this resolution");
  return out;
}

bool in_disk(const Point& p, double cx, double cy, double rc) {
  const double x = p[0] - cx, y = p[1] - cy;
  return x * x + y * y < rc * rc * (1.0 - kEps);
}

bool in_box(double v, double lo, double hi) { return v >= lo - kEps && v < hi - kEps; }

}  // namespace

GridSet make_disk(double radius, double h, int ndim) {
  require_positive(radius, "radius");
  if (ndim != 2 && ndim != 3) throw InputError("unsupported dimension");
  const double rc = radius / h;
  const Point lo{-radius, -radius, ndim == 3 ? -radius : 0.0};
  const Point hi{radius, radius, ndim == 3 ? radius : 0.0};
  return rasterize(ndim, h, lo, hi, [=](const Point& p) {
    const double z = ndim == 3 ? p[2] : 0.0;
    return p[0] * p[0] + p[1] * p[1] + z * z < rc * rc * (1.0 - kEps);
  });
}

GridSet make_two_disks(double radius, double separation, double h) {
  require_positive(radius, "radius");
  if (!(separation >= 0.0)) throw InputError("separation must be >= 0");
  const double rc = radius / h, sc = 0.5 * separation / h;
  const double half = 0.5 * separation;
  return rasterize(2, h, {-half - radius, -radius, 0.0}, {half + radius, radius, 0.0},
                   [=](const Point& p) { return in_disk(p, -sc, 0, rc) || in_disk(p, sc, 0, rc); });
}

GridSet make_dumbbell(double radius, double separation, double neck_width, double h) {
  require_positive(radius, "radius");
  require_positive(neck_width, "neck width");
  if (!(separation > 0.0)) throw InputError("separation must be > 0");
  if (neck_width >= 2.0 * radius) throw InputError("neck width must be below the bulb diameter");
  const double rc = radius / h, sc = 0.5 * separation / h, wc = 0.5 * neck_width / h;
  const double half = 0.5 * separation;
  return rasterize(2, h, {-half - radius, -radius, 0.0}, {half + radius, radius, 0.0}, [=](const Point& p) {
    const bool neck = std::abs(p[0]) <= sc && std::abs(p[1]) < wc - kEps;
    return neck || in_disk(p, -sc, 0, rc) || in_disk(p, sc, 0, rc);
  });
}

GridSet make_cube(double side, double h, int ndim) {
  require_positive(side, "side");
  if (ndim != 2 && ndim != 3) throw InputError("unsupported dimension");
  const double half = 0.5 * side;
  const double hc = half / h;
  Point lo{-half, -half, 0.0}, hi{half, half, 0.0};
  if (ndim == 3) lo[2] = -half, hi[2] = half;
  return rasterize(ndim, h, lo, hi, [=](const Point& p) {
    for (int a = 0; a < ndim; ++a) {
      if (!in_box(p[a], -hc, hc)) return false;
    }
    return true;
  });
}

HoleShape make_disk_minus_hole(double radius, double a, HoleKind kind, double h) {
  require_positive(a, "hole size");
  HoleShape s;
  s.U = make_disk(radius, h);
  const Geometry& g = s.U.geometry();
  const double ac = a / h;
  const std::array<long, 3> off = g.lattice_offset();
  std::vector<std::uint8_t> hole(g.cell_count(), 0);
  for (std::size_t idx = 0; idx < hole.size(); ++idx) {
    if (!s.U.contains(idx)) continue;
    const CellCoord c = g.coords(idx);
    const double x = static_cast<double>(off[0] + c[0]) + 0.5;
    const double y = static_cast<double>(off[1] + c[1]) + 0.5;
    if (kind == HoleKind::Square) {
      hole[idx] = in_box(x, -0.5 * ac, 0.5 * ac) && in_box(y, -0.5 * ac, 0.5 * ac);
    } else {
      hole[idx] = (in_box(x, -ac, 0.0) && in_box(y, 0.0, ac)) || (in_box(x, 0.0, ac) && in_box(y, -ac, 0.0));
    }
  }
  s.A = GridSet(g, std::move(hole));
  if (s.A.count() == s.U.count() || !is_subset(s.A, s.U)) throw InputError("hole must lie strictly inside the disk");
  s.E = set_difference(s.U, s.A);
  return s;
}

double ShapeSpec::number(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) throw InputError("shape '" + kind + "' needs parameter '" + key + "'");
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(it->second, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != it->second.size()) throw InputError("shape parameter '" + key + "' is not a number");
  return v;
}

double ShapeSpec::number_or(const std::string& key, double fallback) const {
  return params.count(key) ? number(key) : fallback;
}

ShapeSpec parse_shape(const std::string& text, double h) {
  ShapeSpec s;
  s.h = h;
  const auto colon = text.find(':');
  s.kind = text.substr(0, colon);
  if (colon == std::string::npos) return s;
  const std::string rest = text.substr(colon + 1);
  if (s.kind == "file") {
    s.params["path"] = rest;
    return s;
  }
  std::istringstream is(rest);
  for (std::string item; std::getline(is, item, ',');) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("shape parameter without '=': " + item);
    s.params[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return s;
}

GridSet make_shape(const ShapeSpec& s) {
  if (s.kind == "file") {
    auto it = s.params.find("path");
    if (it == s.params.end()) throw InputError("file shape needs a path");
    return read_mask(it->second);
  }
  const int dim = static_cast<int>(s.number_or("dim", 2));
  if (s.kind == "disk" || s.kind == "ball") return make_disk(s.number("r"), s.h, s.kind == "ball" ? 3 : dim);
  if (s.kind == "two-disks") return make_two_disks(s.number("r"), s.number("sep"), s.h);
  if (s.kind == "dumbbell") return make_dumbbell(s.number("r"), s.number("sep"), s.number("neck"), s.h);
  if (s.kind == "cube") return make_cube(s.number("side"), s.h, dim);
  if (s.kind == "disk-minus-hole") {
    HoleKind kind = HoleKind::Square;
    if (auto it = s.params.find("hole"); it != s.params.end()) {
      if (it->second == "bowtie") {
        kind = HoleKind::Bowtie;
      } else if (it->second != "square") {
        throw InputError("hole must be 'square' or 'bowtie'");
      }
    }
    return make_disk_minus_hole(s.number("r"), s.number("a"), kind, s.h).E;
  }
  throw InputError("unknown shape kind '" + s.kind + "'");
}

}  // namespace covergeo
