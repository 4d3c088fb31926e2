#include "covergeo/partition.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "covergeo/errors.hpp"
#include "covergeo/measure.hpp"
#include "covergeo/morphology.hpp"

namespace covergeo {

namespace {

long floor_div(long a, long b) {
  const long q = a / b;
  return (a % b != 0 && (a < 0) != (b < 0)) ? q - 1 : q;
}

void require_resolution(const GridSet& E, double delta) {
  if (!(delta >= 4.0 * E.h())) {
    std::ostringstream os;
    os << "delta >= 4h violated: delta = " << delta << ", 4h = " << 4.0 * E.h();
    throw HypothesisError(Hypothesis::ResolutionFloor, os.str());
  }
}

std::vector<Region> collect_regions(const Geometry& g, const std::vector<std::int32_t>& labels,
                                    const std::vector<Region>& seeds) {
  std::map<std::int32_t, std::vector<CellCoord>> cells;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 0) cells[labels[i]].push_back(g.coords(i));
  }
  std::vector<Region> out;
  for (const Region& seed : seeds) {
    auto it = cells.find(seed.id);
    if (it == cells.end()) continue;
    Region r = seed;
    r.cells = it->second.size();
    r.measure = static_cast<double>(r.cells) * g.cell_measure();
    r.diameter = diameter(it->second, g.h, g.ndim).value;
    out.push_back(r);
  }
  return out;
}

// `cover` is the distance used to hand out non-seed cells; it exceeds the
// nominal `fatten` by the grid tolerance when stability was certified with it.
Partition build(const GridSet& E, double delta, double fatten, double cover) {
  const Geometry& g = E.geometry();
  const int n = g.ndim;
  const double h = g.h;
  const long m = static_cast<long>(std::floor(delta / (h * std::sqrt(double(n))) + 1e-9));
  if (m < 1) throw HypothesisError(Hypothesis::ResolutionFloor, "delta / sqrt(n) >= h violated");

  const GridSet core = erode(E, delta);
  if (core.empty()) {
    std::ostringstream os;
    os << "erosion empty at delta: erode(E, " << delta << ") has no cells";
    throw HypothesisError(Hypothesis::ErosionEmpty, os.str());
  }

  const std::array<long, 3> off = g.lattice_offset();
  auto cube_of = [&](const CellCoord& c) {
    CellCoord q{0, 0, 0};
    for (int a = 0; a < n; ++a) q[a] = static_cast<int>(floor_div(off[a] + c[a], m));
    return q;
  };

  std::map<CellCoord, std::int32_t> seed_label;  // ordered lexicographically
  for (std::size_t i : core.cells()) seed_label.emplace(cube_of(g.coords(i)), 0);
  std::vector<Region> seeds;
  std::vector<CellCoord> order;
  for (auto& [cube, label] : seed_label) {
    label = static_cast<std::int32_t>(seeds.size() + 1);
    Region r;
    r.id = label;
    r.seed_index = static_cast<int>(seeds.size());
    r.seed_cube = cube;
    seeds.push_back(r);
    order.push_back(cube);
  }

  Partition P;
  P.base = E;
  P.delta = delta;
  P.ell = static_cast<double>(m) * h;
  P.fatten_radius = fatten;
  P.labels.assign(g.cell_count(), 0);

  // Seed cubes keep their own cells.
  for (std::size_t i : E.cells()) {
    auto it = seed_label.find(cube_of(g.coords(i)));
    if (it != seed_label.end()) P.labels[i] = it->second;
  }

  // Remaining cells go to the first cube within `cover` (cell-center metric).
  const double thr = (cover / h) * (cover / h) * (1.0 + 1e-12);
  const long reach = static_cast<long>(std::floor(cover / h + 1e-9));
  for (std::size_t k = 0; k < order.size(); ++k) {
    std::array<long, 3> lo{0, 0, 0}, hi{0, 0, 0};
    std::array<int, 3> from{0, 0, 0}, to{0, 0, 0};
    for (int a = 0; a < n; ++a) {
      lo[a] = order[k][a] * m - off[a];
      hi[a] = lo[a] + m - 1;
      from[a] = static_cast<int>(std::max(0L, lo[a] - reach));
      to[a] = static_cast<int>(std::min(long(g.dims[a]) - 1, hi[a] + reach));
    }
    for (int z = from[2]; z <= to[2]; ++z) {
      for (int y = from[1]; y <= to[1]; ++y) {
        for (int x = from[0]; x <= to[0]; ++x) {
          const std::size_t idx = g.index(x, y, z);
          if (P.labels[idx] != 0 || !E.contains(idx)) continue;
          const int c[3] = {x, y, z};
          double d2 = 0.0;
          for (int a = 0; a < n; ++a) {
            const long d = std::max({0L, lo[a] - c[a], c[a] - hi[a]});
            d2 += static_cast<double>(d * d);
          }
          if (d2 <= thr) P.labels[idx] = static_cast<std::int32_t>(k + 1);
        }
      }
    }
  }

  std::size_t missing = 0;
  for (std::size_t i : E.cells()) missing += P.labels[i] == 0;
  if (missing != 0) {
    std::ostringstream os;
    os << "E == open(E, " << fatten << ") violated: " << missing << " cells farther than " << cover
       << " from every seed cube";
    throw HypothesisError(Hypothesis::NotOpeningStable, os.str());
  }
  P.regions = collect_regions(g, P.labels, seeds);
  return P;
}

}  // namespace

Partition good_partition(const GridSet& E, double delta) {
  if (E.empty()) throw InputError("good_partition: empty set");
  require_resolution(E, delta);
  const double rho = opening_stability_radius(E);
  if (delta > rho) {
    std::ostringstream os;
    os << "delta <= opening stability radius violated: delta = " << delta << ", radius = " << rho;
    throw HypothesisError(Hypothesis::StabilityRadius, os.str());
  }
  return build(E, delta, delta, delta + grid_tolerance(E.geometry()));
}

Partition partition_with_eta(const GridSet& E, double delta) {
  if (E.empty()) throw InputError("partition_with_eta: empty set");
  require_resolution(E, delta);
  const double inner = max_inner_distance(E);
  if (!(delta < inner)) {
    std::ostringstream os;
    os << "delta < sup dist(x, E^c) violated: delta = " << delta << ", sup = " << inner;
    throw HypothesisError(Hypothesis::InradiusTooSmall, os.str());
  }
  const double eta = eta_delta(E, delta);
  return build(E, delta, eta, eta);
}

Partition restrict_partition(const Partition& P, const GridSet& sub_in) {
  const Geometry& g = P.base.geometry();
  GridSet sub;
  try {
    sub = sub_in.geometry() == g ? sub_in : sub_in.reembed(g);
  } catch (const InputError&) {
    throw InputError("restrict_partition: subset does not fit the partition's grid");
  }
  std::vector<CellCoord> offending;
  for (std::size_t i : sub.cells()) {
    if (!P.base.contains(i)) offending.push_back(g.coords(i));
  }
  if (!offending.empty()) {
    std::ostringstream os;
    os << "restrict_partition: " << offending.size() << " cells of the subset lie outside the base:";
    for (std::size_t k = 0; k < std::min<std::size_t>(offending.size(), 10); ++k) {
      os << " (" << offending[k][0] << "," << offending[k][1];
      if (g.ndim == 3) os << "," << offending[k][2];
      os << ")";
    }
    if (offending.size() > 10) os << " ...";
    throw InputError(os.str());
  }

  Partition out;
  out.base = sub;
  out.delta = P.delta;
  out.ell = P.ell;
  out.fatten_radius = P.fatten_radius;
  out.removed_measure = P.removed_measure + P.base.measure() - sub.measure();
  out.labels.assign(P.labels.size(), 0);
  for (std::size_t i : sub.cells()) out.labels[i] = P.labels[i];
  out.regions = collect_regions(g, out.labels, P.regions);
  return out;
}

GoodCertificate certify_good(const Partition& P, double delta) {
  const Geometry& g = P.base.geometry();
  const double n = g.ndim;
  const double h = g.h;
  GoodCertificate c;
  c.delta = delta;
  c.volume_floor = std::pow(delta, n) / std::pow(n, n / 2.0) - P.removed_measure;
  c.diam_cap = delta + 2.0 * std::max(delta, P.fatten_radius);
  const double ell = delta / std::sqrt(n);
  c.measure_slack = std::pow(ell, n) - std::pow(std::max(0.0, ell - h), n);
  c.diameter_slack = (std::sqrt(n) + 1.0) * h;

  // Recount labels from the raster rather than trusting the region table.
  std::map<std::int32_t, std::size_t> counted;
  bool consistent = P.labels.size() == g.cell_count();
  for (std::size_t i = 0; consistent && i < P.labels.size(); ++i) {
    if ((P.labels[i] != 0) != P.base.contains(i)) consistent = false;
    if (P.labels[i] != 0) ++counted[P.labels[i]];
  }
  std::size_t total = 0;
  for (const Region& r : P.regions) {
    total += r.cells;
    auto it = counted.find(r.id);
    if (it == counted.end() || it->second != r.cells) consistent = false;
  }
  c.labels_conserved = consistent && total == P.base.count() && counted.size() == P.regions.size();

  bool all = !P.regions.empty();
  c.min_measure = P.regions.empty() ? 0.0 : P.regions.front().measure;
  for (const Region& r : P.regions) {
    RegionCheck rc;
    rc.id = r.id;
    rc.measure = r.measure;
    rc.diameter = r.diameter;
    rc.measure_ok = r.measure >= c.volume_floor - c.measure_slack;
    rc.diameter_ok = r.diameter <= c.diam_cap + c.diameter_slack;
    all = all && rc.measure_ok && rc.diameter_ok;
    c.min_measure = std::min(c.min_measure, r.measure);
    c.max_diameter = std::max(c.max_diameter, r.diameter);
    c.regions.push_back(rc);
  }
  c.verdict = all && c.labels_conserved && c.volume_floor > 0.0;
  return c;
}

AlmostCertificate certify_almost(const Partition& P, const GridSet& E_in, double alpha) {
  AlmostCertificate c;
  c.alpha = alpha;
  const GridSet& A = P.base;
  GridSet E = E_in;
  if (!(E.geometry() == A.geometry())) E = E_in.reembed(A.geometry());
  c.measure_A = A.measure();
  c.measure_E = E.measure();
  c.subset = is_subset(A, E);
  c.coverage_ratio = c.measure_E > 0.0 ? c.measure_A / c.measure_E : 0.0;
  const double need = (1.0 - alpha) * c.measure_E;
  c.verdict = c.subset && c.measure_A >= need * (1.0 - 1e-12);
  c.literal_reading = set_difference(E, set_intersection(E, A)).measure() >= need;
  return c;
}

}  // namespace covergeo
