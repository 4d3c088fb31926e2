#include "covergeo/montecarlo.hpp"

#include <algorithm>
#include <cmath>

#include "covergeo/distance.hpp"
#include "covergeo/errors.hpp"
#include "covergeo/philox.hpp"

namespace covergeo {

namespace {

std::array<int, 3> cell_of(const Geometry& g, const Point& p) {
  std::array<int, 3> c{0, 0, 0};
  for (int a = 0; a < g.ndim; ++a) {
    const int v = static_cast<int>(std::floor((p[a] - g.origin[a]) / g.h));
    c[a] = std::clamp(v, 0, g.dims[a] - 1);
  }
  return c;
}

void sample_into(const GridSet& E, const std::vector<std::size_t>& cells, std::size_t N, std::uint64_t seed,
                 std::uint64_t trial, std::vector<Point>& out) {
  const Geometry& g = E.geometry();
  const PhiloxKey key = philox_key(seed);
  const auto t_lo = static_cast<std::uint32_t>(trial), t_hi = static_cast<std::uint32_t>(trial >> 32);
  out.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    const auto ii = static_cast<std::uint32_t>(i);
    const PhiloxCounter r = philox4x32_10({ii, 0u, t_lo, t_hi}, key);
    const std::uint64_t draw = (static_cast<std::uint64_t>(r[0]) << 32) | r[1];
    const CellCoord c = g.coords(cells[bounded(draw, cells.size())]);
    double u[3] = {unit_open(r[2]), unit_open(r[3]), 0.5};
    if (g.ndim == 3) u[2] = unit_open(philox4x32_10({ii, 1u, t_lo, t_hi}, key)[0]);
    Point p{0.0, 0.0, 0.0};
    for (int a = 0; a < g.ndim; ++a) p[a] = g.origin[a] + (c[a] + u[a]) * g.h;
    out[i] = p;
  }
}

struct Coverage {
  std::size_t covered = 0;
  std::size_t covered_conservative = 0;
};

// Counts E cells within r (and r - h sqrt(n)/2) of a sample-holding cell.
Coverage count_covered(const GridSet& E, const std::vector<Point>& pts, double r, std::vector<std::uint8_t>& src) {
  const Geometry& g = E.geometry();
  Coverage c;
  if (pts.empty()) return c;
  src.assign(g.cell_count(), 0);
  for (const Point& p : pts) {
    const auto q = cell_of(g, p);
    src[g.index(q[0], q[1], q[2])] = 1;
  }
  const std::vector<SquaredCells> d2 = kernels::squared_edt_serial(g, src);
  const double t = (r / g.h) * (r / g.h);
  const double rc = r - 0.5 * g.h * std::sqrt(double(g.ndim));
  const double tc = rc < 0.0 ? -1.0 : (rc / g.h) * (rc / g.h);
  const auto m = E.mask();
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!m[i]) continue;
    const double d = static_cast<double>(d2[i]);
    c.covered += d <= t;
    c.covered_conservative += d <= tc;
  }
  return c;
}

void require_radius(double r) {
  if (!(r > 0.0) || std::isnan(r)) throw InputError("coverage radius must be > 0");
}

struct TrialOutcome {
  bool success = false;
  bool success_conservative = false;
  double fraction = 0.0;
};

struct Prepared {
  GridSet source;
  std::vector<std::size_t> cells;
};

Prepared prepare(const GridSet& E, const TrialConfig& cfg) {
  if (cfg.trials == 0) throw InputError("trials must be >= 1");
  if (cfg.bound && cfg.trials < 100) throw InputError("a bound verdict needs trials >= 100");
  require_radius(cfg.r);
  if (cfg.mode.kind == Mode::Almost && !(cfg.mode.alpha >= 0.0 && cfg.mode.alpha < 1.0)) {
    throw InputError("alpha must be in [0, 1)");
  }
  Prepared p;
  p.source = cfg.sample_from ? *cfg.sample_from : E;
  if (!(p.source.geometry() == E.geometry())) p.source = p.source.reembed(E.geometry());
  p.cells = p.source.cells();
  if (p.cells.empty() && cfg.N > 0) throw InputError("cannot sample from an empty set");
  return p;
}

TrialOutcome run_trial(const GridSet& E, const Prepared& p, const TrialConfig& cfg, std::uint64_t t,
                       std::vector<Point>& pts, std::vector<std::uint8_t>& src) {
  TrialOutcome o;
  if (E.empty()) {
    o.success = o.success_conservative = true;
    o.fraction = 1.0;
    return o;
  }
  sample_into(p.source, p.cells, cfg.N, cfg.seed, t, pts);
  const Coverage c = count_covered(E, pts, cfg.r, src);
  const double total = static_cast<double>(E.count());
  o.fraction = static_cast<double>(c.covered) / total;
  const double frac_c = static_cast<double>(c.covered_conservative) / total;
  if (cfg.mode.kind == Mode::Full) {
    o.success = c.covered == E.count();
    o.success_conservative = c.covered_conservative == E.count();
  } else {
    o.success = o.fraction >= 1.0 - cfg.mode.alpha;
    o.success_conservative = frac_c >= 1.0 - cfg.mode.alpha;
  }
  return o;
}

TrialReport summarize(const TrialConfig& cfg, const std::vector<TrialOutcome>& outcomes) {
  TrialReport rep;
  rep.trials = cfg.trials;
  rep.N = cfg.N;
  rep.r = cfg.r;
  for (const TrialOutcome& o : outcomes) {
    rep.successes += o.success;
    rep.successes_conservative += o.success_conservative;
    if (cfg.mode.kind == Mode::Almost) rep.fractions.push_back(o.fraction);
  }
  rep.p_hat = static_cast<double>(rep.successes) / static_cast<double>(rep.trials);
  std::tie(rep.wilson_lo, rep.wilson_hi) = wilson_interval(rep.successes, rep.trials);
  rep.bound = cfg.bound;
  if (cfg.bound) rep.verdict = rep.wilson_hi >= *cfg.bound - 1e-9;
  return rep;
}

}  // namespace

SampleSet sample_uniform(const GridSet& E, std::size_t N, std::uint64_t seed, std::uint64_t trial) {
  if (E.empty()) throw InputError("cannot sample from an empty set");
  if (N == 0) throw InputError("N must be >= 1");
  SampleSet s;
  s.seed = seed;
  s.trial = trial;
  sample_into(E, E.cells(), N, seed, trial, s.points);
  return s;
}

CoverVerdict covers(const GridSet& E, const SampleSet& S, double r) {
  require_radius(r);
  std::vector<std::uint8_t> src;
  const Coverage c = count_covered(E, S.points, r, src);
  return {c.covered == E.count(), c.covered_conservative == E.count()};
}

CoverFraction covered_fraction(const GridSet& E, const SampleSet& S, double r) {
  require_radius(r);
  if (E.empty()) return {1.0, 1.0};
  std::vector<std::uint8_t> src;
  const Coverage c = count_covered(E, S.points, r, src);
  const double total = static_cast<double>(E.count());
  return {c.covered / total, c.covered_conservative / total};
}

std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

TrialReport estimate_probability(const GridSet& E, const TrialConfig& cfg) {
  const Prepared p = prepare(E, cfg);
  std::vector<TrialOutcome> outcomes(cfg.trials);
  const long trials = static_cast<long>(cfg.trials);
#pragma omp parallel
  {
    std::vector<Point> pts;
    std::vector<std::uint8_t> src;
#pragma omp for schedule(dynamic, 8)
    for (long t = 0; t < trials; ++t) outcomes[t] = run_trial(E, p, cfg, static_cast<std::uint64_t>(t), pts, src);
  }
  return summarize(cfg, outcomes);
}

namespace kernels {

TrialReport estimate_probability_serial(const GridSet& E, const TrialConfig& cfg) {
  const Prepared p = prepare(E, cfg);
  std::vector<TrialOutcome> outcomes(cfg.trials);
  std::vector<Point> pts;
  std::vector<std::uint8_t> src;
  for (std::size_t t = 0; t < cfg.trials; ++t) outcomes[t] = run_trial(E, p, cfg, t, pts, src);
  return summarize(cfg, outcomes);
}

}  // namespace kernels

}  // namespace covergeo
