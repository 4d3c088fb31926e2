#include "covergeo/flatnorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "covergeo/distance.hpp"
#include "covergeo/errors.hpp"
#include "covergeo/maxflow.hpp"
#include "covergeo/measure.hpp"
#include "covergeo/morphology.hpp"

namespace covergeo {

namespace {

struct QuantizedWeights {
  std::int64_t unary;  // lambda h^2 per disagreeing cell
  std::vector<std::pair<std::array<int, 3>, std::int64_t>> pair;
};

QuantizedWeights quantize(const Geometry& g, double lambda) {
  const double q = kernels::flatnorm_quantum(g.h);
  QuantizedWeights w;
  w.unary = std::llround(lambda * g.h * g.h / q);
  for (const CroftonEdge& e : crofton_neighborhood(2, g.h)) w.pair.push_back({e.offset, std::llround(e.weight / q)});
  return w;
}

void require_2d(const Geometry& g) {
  if (g.ndim != 2) throw InputError("unsupported dimension: flat norm is 2D only");
}

void require_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InputError("lambda must be finite and > 0");
}

bool touches_rim(const Geometry& g, std::span<const std::uint8_t> m) {
  for (int j = 0; j < g.dims[1]; ++j) {
    for (int i = 0; i < g.dims[0]; ++i) {
      const bool rim = i == 0 || j == 0 || i == g.dims[0] - 1 || j == g.dims[1] - 1;
      if (rim && m[g.index(i, j)]) return true;
    }
  }
  return false;
}

GridSet on_geometry(const GridSet& s, const Geometry& g) { return s.geometry() == g ? s : s.reembed(g); }

double c_hat() {
  static const double c = reach_constant().C_hat;
  return c;
}

}  // namespace

namespace kernels {

double flatnorm_quantum(double h) { return std::ldexp(h, -32); }

std::int64_t flatnorm_energy(const Geometry& g, std::span<const std::uint8_t> e, std::span<const std::uint8_t> sigma,
                             double lambda) {
  require_2d(g);
  const QuantizedWeights w = quantize(g, lambda);
  auto in = [&](int i, int j) { return g.in_bounds(i, j, 0) && sigma[g.index(i, j)] != 0; };
  std::int64_t total = 0;
  for (std::size_t p = 0; p < e.size(); ++p) total += (e[p] != 0) != (sigma[p] != 0) ? w.unary : 0;
  for (const auto& [off, wq] : w.pair) {
    for (int j = -std::abs(off[1]); j < g.dims[1] + std::abs(off[1]); ++j) {
      for (int i = -std::abs(off[0]); i < g.dims[0] + std::abs(off[0]); ++i) {
        if (in(i, j) != in(i + off[0], j + off[1])) total += wq;
      }
    }
  }
  return total;
}

CutSolution flatnorm_cut(const Geometry& g, std::span<const std::uint8_t> e, double lambda) {
  require_2d(g);
  require_lambda(lambda);
  const QuantizedWeights w = quantize(g, lambda);
  const int cells = static_cast<int>(g.cell_count());
  const int s = cells, t = cells + 1;
  MaxFlow flow(cells + 2);
  for (int j = 0; j < g.dims[1]; ++j) {
    for (int i = 0; i < g.dims[0]; ++i) {
      const int p = static_cast<int>(g.index(i, j));
      if (e[p]) {
        flow.add_edge(s, p, w.unary);
      } else {
        flow.add_edge(p, t, w.unary);
      }
      // Neighbors beyond the array are fixed outside: cutting costs w when p is in Sigma.
      std::int64_t to_outside = 0;
      for (const auto& [off, wq] : w.pair) {
        const int qi = i + off[0], qj = j + off[1];
        if (g.in_bounds(qi, qj, 0)) {
          flow.add_edge(p, static_cast<int>(g.index(qi, qj)), wq, wq);
        } else {
          to_outside += wq;
        }
        if (!g.in_bounds(i - off[0], j - off[1], 0)) to_outside += wq;
      }
      if (to_outside > 0) flow.add_edge(p, t, to_outside);
    }
  }
  CutSolution sol;
  sol.energy = flow.solve(s, t);
  const std::vector<std::uint8_t> sink_side = flow.reaches_sink(t);
  sol.sigma.assign(g.cell_count(), 0);
  for (int p = 0; p < cells; ++p) sol.sigma[p] = !sink_side[p];
  return sol;
}

}  // namespace kernels

FlatNormResult flatnorm_minimize(const GridSet& E, double lambda) {
  require_2d(E.geometry());
  require_lambda(lambda);
  int pad = 2;
  GridSet work = E.with_padding(pad);
  kernels::CutSolution sol = kernels::flatnorm_cut(work.geometry(), work.mask(), lambda);
  while (touches_rim(work.geometry(), sol.sigma)) {
    pad *= 2;
    work = E.with_padding(pad);
    sol = kernels::flatnorm_cut(work.geometry(), work.mask(), lambda);
  }
  FlatNormResult r;
  r.lambda = lambda;
  r.quantized_energy = sol.energy;
  GridSet sigma(work.geometry(), std::move(sol.sigma));
  try {
    r.sigma = sigma.reembed(E.geometry());
  } catch (const InputError&) {
    r.sigma = sigma;  // Sigma reaches past E's array; keep the padded grid
  }
  const GridSet e_here = on_geometry(E, r.sigma.geometry());
  r.perim_sigma = perimeter(r.sigma);
  r.sym_diff_measure = symmetric_difference_measure(r.sigma, e_here);
  r.energy = r.perim_sigma + lambda * r.sym_diff_measure;
  return r;
}

std::vector<FlatNormResult> flatnorm_ladder(const GridSet& E, std::span<const double> lambdas) {
  for (double l : lambdas) require_lambda(l);
  std::vector<FlatNormResult> out(lambdas.size());
  const long n = static_cast<long>(lambdas.size());
  bool failed = false;
  std::string message;
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = flatnorm_minimize(E, lambdas[i]);
    } catch (const std::exception& e) {
#pragma omp critical
      {
        failed = true;
        message = e.what();
      }
    }
  }
  if (failed) throw InputError(message);
  return out;
}

namespace kernels {

std::vector<FlatNormResult> flatnorm_ladder_serial(const GridSet& E, std::span<const double> lambdas) {
  std::vector<FlatNormResult> out;
  for (double l : lambdas) out.push_back(flatnorm_minimize(E, l));
  return out;
}

}  // namespace kernels

LambdaThreshold lambda_threshold(const GridSet& E) {
  if (E.empty()) throw InputError("lambda_threshold: empty set");
  require_2d(E.geometry());
  std::vector<CellCoord> coords;
  for (std::size_t i : E.cells()) coords.push_back(E.geometry().coords(i));
  const double diam = diameter(coords, E.h(), 2).value;

  LambdaThreshold lt;
  auto nonempty = [&](double lambda) {
    ++lt.solves;
    return !flatnorm_minimize(E, lambda).sigma.empty();
  };
  const double lo0 = 0.1 / diam, hi0 = 10.0 / E.h();
  lt.lo = lo0;
  lt.hi = hi0;
  int widen = 0;
  while (nonempty(lt.lo) && widen < 30) lt.lo /= 10.0, ++widen;
  while (!nonempty(lt.hi) && widen < 60) lt.hi *= 10.0, ++widen;
  if (widen >= 30 || nonempty(lt.lo) || !nonempty(lt.hi)) {
    std::ostringstream os;
    os << "lambda_threshold: no empty/nonempty transition found; initial bracket [" << lo0 << ", " << hi0
       << "], widened to [" << lt.lo << ", " << lt.hi << "]";
    throw InputError(os.str());
  }
  while (lt.hi / lt.lo > 1.0 + 1e-3) {
    const double mid = std::sqrt(lt.lo * lt.hi);
    (nonempty(mid) ? lt.hi : lt.lo) = mid;
  }
  lt.value = std::sqrt(lt.lo * lt.hi);
  return lt;
}

ReachCheck minimizer_reach_check(const FlatNormResult& res) {
  if (res.sigma.empty()) {
    throw HypothesisError(Hypothesis::EmptyMinimizer, "Sigma_lambda nonempty violated at lambda = " +
                                                          std::to_string(res.lambda));
  }
  const double h = res.sigma.h();
  ReachCheck rc;
  rc.lambda = res.lambda;
  rc.required = c_hat() / res.lambda - 3.0 * h;
  rc.sigma_radius = opening_stability_radius(res.sigma);
  const StabilityResult comp = complement_stability(res.sigma, std::max(rc.required, h) + h);
  rc.complement_radius = comp.radius;
  rc.complement_capped = comp.capped;
  rc.verdict = rc.sigma_radius >= rc.required && rc.complement_radius >= rc.required;
  return rc;
}

PipelineResult almost_cover_pipeline(const GridSet& E, double lambda, double delta) {
  require_2d(E.geometry());
  require_lambda(lambda);
  if (E.empty()) throw InputError("almost_cover_pipeline: empty set");
  if (!(delta > 0.0)) throw InputError("delta must be > 0");
  if (!(delta < 1.0 / (5.0 * lambda))) {
    std::ostringstream os;
    os << "0 < delta < 1/(5 lambda) violated: delta = " << delta << ", 1/(5 lambda) = " << 1.0 / (5.0 * lambda);
    throw HypothesisError(Hypothesis::DeltaTooLargeForScale, os.str());
  }
  PipelineResult out;
  out.threshold = lambda_threshold(E);
  if (!(lambda > out.threshold.value)) {
    std::ostringstream os;
    os << "lambda > Lambda_E violated: lambda = " << lambda << ", Lambda_E = " << out.threshold.value;
    throw HypothesisError(Hypothesis::LambdaBelowThreshold, os.str());
  }
  out.flatnorm = flatnorm_minimize(E, lambda);
  const GridSet& sigma = out.flatnorm.sigma;
  if (sigma.empty()) {
    throw HypothesisError(Hypothesis::EmptyMinimizer, "Sigma_lambda nonempty violated");
  }
  const double s = out.flatnorm.sym_diff_measure;
  if (!(s < 0.5 * delta * delta)) {
    std::ostringstream os;
    os << "|S_lambda| < delta^2/2 violated: |S_lambda| = " << s << ", delta^2/2 = " << 0.5 * delta * delta;
    throw HypothesisError(Hypothesis::SymDiffTooLarge, os.str());
  }
  const Partition full = good_partition(sigma, delta);
  const GridSet e_here = on_geometry(E, sigma.geometry());
  out.A = set_intersection(e_here, sigma);
  out.partition = restrict_partition(full, out.A);
  out.good = certify_good(out.partition, delta);
  out.alpha = delta * delta / (2.0 * E.measure());
  out.almost = certify_almost(out.partition, e_here, out.alpha);
  out.bound = bound_flatnorm(static_cast<int>(out.partition.regions.size()), delta, s, out.A.measure());
  return out;
}

FillInReport fill_in_experiment(const GridSet& U, const GridSet& A_in, double lambda) {
  require_2d(U.geometry());
  require_lambda(lambda);
  if (U.empty()) throw InputError("fill_in_experiment: empty U");
  const GridSet A = on_geometry(A_in, U.geometry());
  const double h = U.h();
  FillInReport rep;
  rep.lambda = lambda;
  rep.measure_A = A.measure();

  if (!A.empty()) {
    const DistanceField to_outside = distance_transform(U, true);
    double dmin = std::numeric_limits<double>::infinity();
    for (std::size_t i : A.cells()) dmin = std::min(dmin, to_outside.values[i]);
    rep.margin = dmin - h;
    if (!(rep.margin >= h)) {
      std::ostringstream os;
      os << "A compactly inside U violated: min dist(A, U^c) - h = " << rep.margin << " < h = " << h;
      throw HypothesisError(Hypothesis::NotCompactlyInside, os.str());
    }
  } else {
    rep.margin = std::numeric_limits<double>::infinity();
  }

  const double scale = 2.0 / lambda;
  rep.stability_U = opening_stability_radius(U);
  rep.complement_stability_U = complement_stability(U, scale + h).radius;
  if (!(scale < std::min(rep.stability_U, rep.complement_stability_U))) {
    std::ostringstream os;
    os << "0 < 2/lambda < rho violated: 2/lambda = " << scale << ", stability(U) = " << rep.stability_U
       << ", stability(U^c) >= " << rep.complement_stability_U;
    throw HypothesisError(Hypothesis::ScaleTooCoarse, os.str());
  }

  const GridSet E = set_difference(U, A);
  rep.flatnorm = flatnorm_minimize(E, lambda);
  rep.sym_diff_to_U = symmetric_difference_measure(rep.flatnorm.sigma, on_geometry(U, rep.flatnorm.sigma.geometry()));
  rep.tolerance = h * perimeter(U);
  rep.verdict = rep.sym_diff_to_U <= rep.tolerance;
  return rep;
}

}  // namespace covergeo
