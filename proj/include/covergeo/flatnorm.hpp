#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "covergeo/bounds.hpp"
#include "covergeo/grid_set.hpp"
#include "covergeo/partition.hpp"

namespace covergeo {

/// Minimizer of Per(Sigma) + lambda |Sigma delta E| on the grid.
struct FlatNormResult {
  double lambda = 0.0;
  GridSet sigma;                  // maximal minimizer; E's geometry when it fits
  double energy = 0.0;            // perim_sigma + lambda * sym_diff_measure
  double perim_sigma = 0.0;
  double sym_diff_measure = 0.0;  // |S_lambda|
  std::int64_t quantized_energy = 0;  // min-cut value in units of quantum(h)
};

namespace kernels {

/// Capacities are integers in units of this quantum (h * 2^-32), so the cut
/// value is exact.
double flatnorm_quantum(double h);

/// Quantized discrete energy of labeling `sigma` against `e` on a raw 2D
/// mask; cells beyond the array are outside both sets.
std::int64_t flatnorm_energy(const Geometry& g, std::span<const std::uint8_t> e,
                             std::span<const std::uint8_t> sigma, double lambda);

struct CutSolution {
  std::vector<std::uint8_t> sigma;
  std::int64_t energy = 0;
};

/// Exact minimizer over all labelings of the raw mask (source side = Sigma);
/// returns the maximal one.
CutSolution flatnorm_cut(const Geometry& g, std::span<const std::uint8_t> e, double lambda);

}  // namespace kernels

/// Throws InputError for lambda <= 0 and "unsupported dimension" for 3D.
FlatNormResult flatnorm_minimize(const GridSet& E, double lambda);

/// One minimization per lambda; the ladder runs in parallel, results in input order.
std::vector<FlatNormResult> flatnorm_ladder(const GridSet& E, std::span<const double> lambdas);

namespace kernels {
std::vector<FlatNormResult> flatnorm_ladder_serial(const GridSet& E, std::span<const double> lambdas);
}

struct LambdaThreshold {
  double value = 0.0;  // geometric midpoint of the final bracket
  double lo = 0.0;     // Sigma empty
  double hi = 0.0;     // Sigma nonempty
  int solves = 0;
};

/// Empty -> nonempty transition of the maximal minimizer. Starts from
/// [0.1/diam(E), 10/h], widens when needed and bisects geometrically until
/// hi/lo <= 1 + 1e-3.
LambdaThreshold lambda_threshold(const GridSet& E);

struct ReachCheck {
  double lambda = 0.0;
  double required = 0.0;            // C_hat / lambda - 3h
  double sigma_radius = 0.0;
  double complement_radius = 0.0;
  bool complement_capped = false;   // search stopped at the cap, radius is a lower bound
  bool verdict = false;
};

/// Throws HypothesisError(EmptyMinimizer) when Sigma is empty.
ReachCheck minimizer_reach_check(const FlatNormResult& res);

struct PipelineResult {
  FlatNormResult flatnorm;
  LambdaThreshold threshold;
  GridSet A;                 // E cap Sigma
  Partition partition;       // good partition of Sigma restricted to A
  GoodCertificate good;      // of the restricted partition
  AlmostCertificate almost;
  double alpha = 0.0;        // delta^2 / (2|E|)
  CoverageBound bound;
};

/// Checks delta < 1/(5 lambda), lambda > Lambda_E, Sigma nonempty and
/// |S_lambda| < delta^2/2, each with its own HypothesisError, then partitions.
PipelineResult almost_cover_pipeline(const GridSet& E, double lambda, double delta);

struct FillInReport {
  double lambda = 0.0;
  double margin = 0.0;            // min dist(A, U^c) - h
  double stability_U = 0.0;
  double complement_stability_U = 0.0;
  double sym_diff_to_U = 0.0;     // |Sigma delta U|
  double tolerance = 0.0;         // h * Per(U)
  double measure_A = 0.0;
  FlatNormResult flatnorm;
  bool verdict = false;           // Sigma restored U up to the tolerance
};

/// Minimizes on E = U \ A. Throws HypothesisError(NotCompactlyInside) with the
/// margin when A is not at least h inside U, and ScaleTooCoarse unless 2/lambda
/// is below the stability radii of U and of its complement.
FillInReport fill_in_experiment(const GridSet& U, const GridSet& A, double lambda);

}  // namespace covergeo
