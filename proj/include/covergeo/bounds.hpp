#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace covergeo {

enum class BoundKind { Reach, Regions, UMinusA, FlatNorm };
const char* to_string(BoundKind k);

struct BoundValue {
  double value = 0.0;  // clamped to [0, 1]
  double raw = 0.0;    // 1 - sum, unclamped
  bool underflow = false;
};

/// A lower bound of the form 1 - sum_i m_i exp(-c_i N). Single-exponent kinds
/// carry one term (M, c); the region bound carries one term per region.
struct CoverageBound {
  struct Term {
    double multiplicity;
    double coefficient;
  };

  BoundKind kind = BoundKind::Reach;
  int M = 0;
  int n = 2;
  double delta = 0.0;
  double measure_E = 0.0;
  double measure_A = 0.0;  // hole (U-minus-A) or almost set A (flatnorm)
  double measure_S = 0.0;  // |S_lambda| (flatnorm)
  std::vector<Term> terms;

  BoundValue evaluate(double N) const;
  double min_coefficient() const;
};

/// 1 - M exp(-delta^n N / (n^{n/2} |E|)).
CoverageBound bound_reach(int M, int n, double delta, double measure_E);

/// 1 - sum_R exp(-(|R| / |E|) N).
CoverageBound bound_regions(const std::vector<double>& region_measures, double measure_E);

/// 1 - M exp(-(delta^n n^{-n/2} - |A|) N / |E|). HoleTooLarge unless
/// |A| < delta^n n^{-n/2}.
CoverageBound bound_U_minus_A(int M, int n, double delta, double measure_A, double measure_E);

/// 1 - M exp(-(delta^2/2 - |S|) N / |A|). SymDiffTooLarge unless |S| < delta^2/2.
CoverageBound bound_flatnorm(int M, double delta, double measure_S, double measure_A);

/// Smallest integer N >= 0 with evaluate(N) >= p_target, 0 < p_target < 1.
std::uint64_t invert_for_N(const CoverageBound& bound, double p_target);

/// C(theta) = [2 cos t - (1 + sin t)(cos t + 2)] / [2 (cos t + 1)].
double reach_profile(double theta);

struct ReachConstant {
  double C_hat = 0.0;
  double theta_star = 0.0;  // maximizer on (3 pi/2, 2 pi)
  std::vector<double> theta;
  std::vector<double> profile;
};

/// Scan of 10^4 interior points, then golden-section refinement around the
/// best sample.
ReachConstant reach_constant();

}  // namespace covergeo
