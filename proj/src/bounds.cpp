#include "covergeo/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "covergeo/errors.hpp"

namespace covergeo {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << what << " must be finite and > 0 (got " << v << ")";
    throw InputError(os.str());
  }
}

void require_dim(int n) {
  if (n != 2 && n != 3) throw InputError("dimension must be 2 or 3");
}

double volume_floor(int n, double delta) { return std::pow(delta, n) / std::pow(double(n), n / 2.0); }

CoverageBound single(BoundKind kind, int M, int n, double delta, double coefficient) {
  if (M < 1) throw InputError("region count M must be >= 1");
  CoverageBound b;
  b.kind = kind;
  b.M = M;
  b.n = n;
  b.delta = delta;
  b.terms.push_back({static_cast<double>(M), coefficient});
  return b;
}

}  // namespace

const char* to_string(BoundKind k) {
  switch (k) {
    case BoundKind::Reach: return "reach";
    case BoundKind::Regions: return "regions";
    case BoundKind::UMinusA: return "U-minus-A";
    case BoundKind::FlatNorm: return "flatnorm";
  }
  return "?";
}

BoundValue CoverageBound::evaluate(double N) const {
  double s = 0.0;
  for (const Term& t : terms) s += t.multiplicity * std::exp(-t.coefficient * N);
  BoundValue v;
  v.raw = 1.0 - s;
  v.underflow = s == 0.0;
  v.value = v.underflow ? 1.0 : std::clamp(v.raw, 0.0, 1.0);
  return v;
}

double CoverageBound::min_coefficient() const {
  double c = terms.empty() ? 0.0 : terms.front().coefficient;
  for (const Term& t : terms) c = std::min(c, t.coefficient);
  return c;
}

CoverageBound bound_reach(int M, int n, double delta, double measure_E) {
  require_dim(n);
  require_positive(delta, "delta");
  require_positive(measure_E, "|E|");
  CoverageBound b = single(BoundKind::Reach, M, n, delta, volume_floor(n, delta) / measure_E);
  b.measure_E = measure_E;
  return b;
}

CoverageBound bound_regions(const std::vector<double>& region_measures, double measure_E) {
  require_positive(measure_E, "|E|");
  if (region_measures.empty()) throw InputError("bound_regions: no regions");
  double sum = 0.0;
  for (double m : region_measures) {
    require_positive(m, "region measure");
    sum += m;
  }
  if (sum > measure_E * (1.0 + 1e-9)) throw InputError("bound_regions: region measures exceed |E|");
  CoverageBound b;
  b.kind = BoundKind::Regions;
  b.M = static_cast<int>(region_measures.size());
  b.measure_E = measure_E;
  // Equal measures share one term so the sum is stable for large M.
  std::vector<double> sorted = region_measures;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    b.terms.push_back({static_cast<double>(j - i), sorted[i] / measure_E});
    i = j;
  }
  return b;
}

CoverageBound bound_U_minus_A(int M, int n, double delta, double measure_A, double measure_E) {
  require_dim(n);
  require_positive(delta, "delta");
  require_positive(measure_E, "|E|");
  if (!(measure_A >= 0.0)) throw InputError("|A| must be >= 0");
  const double floor = volume_floor(n, delta);
  if (!(measure_A < floor)) {
    std::ostringstream os;
    os << "A too large for delta: |A| < delta^n n^{-n/2} violated (|A| = " << measure_A << ", bound = " << floor
       << ")";
    throw HypothesisError(Hypothesis::HoleTooLarge, os.str());
  }
  CoverageBound b = single(BoundKind::UMinusA, M, n, delta, (floor - measure_A) / measure_E);
  b.measure_E = measure_E;
  b.measure_A = measure_A;
  return b;
}

CoverageBound bound_flatnorm(int M, double delta, double measure_S, double measure_A) {
  require_positive(delta, "delta");
  require_positive(measure_A, "|A|");
  if (!(measure_S >= 0.0)) throw InputError("|S_lambda| must be >= 0");
  const double floor = 0.5 * delta * delta;
  if (!(measure_S < floor)) {
    std::ostringstream os;
    os << "|S_lambda| < delta^2/2 violated (|S_lambda| = " << measure_S << ", delta^2/2 = " << floor << ")";
    throw HypothesisError(Hypothesis::SymDiffTooLarge, os.str());
  }
  CoverageBound b = single(BoundKind::FlatNorm, M, 2, delta, (floor - measure_S) / measure_A);
  b.measure_A = measure_A;
  b.measure_S = measure_S;
  return b;
}

std::uint64_t invert_for_N(const CoverageBound& bound, double p) {
  if (!(p > 0.0 && p < 1.0)) throw InputError("p_target must be in (0, 1)");
  const double cmin = bound.min_coefficient();
  if (!(cmin > 0.0)) throw InputError("bound has a nonpositive exponent coefficient");
  auto ok = [&](std::uint64_t N) { return bound.evaluate(static_cast<double>(N)).value >= p; };

  double total = 0.0;
  for (const auto& t : bound.terms) total += t.multiplicity;
  // sum m_i exp(-c_i N) <= total exp(-cmin N), so this N always suffices.
  const double upper = std::max(0.0, std::ceil(std::log(total / (1.0 - p)) / cmin));
  std::uint64_t hi = static_cast<std::uint64_t>(upper);
  while (!ok(hi)) ++hi;  // guards rounding in the closed form
  if (bound.terms.size() == 1) {
    std::uint64_t N = hi;
    while (N > 0 && ok(N - 1)) --N;
    return N;
  }
  std::uint64_t lo = 0;  // evaluate(0) <= 0 < p
  if (ok(lo)) return 0;
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

double reach_profile(double t) {
  const double c = std::cos(t), s = std::sin(t);
  return (2.0 * c - (1.0 + s) * (c + 2.0)) / (2.0 * (c + 1.0));
}

ReachConstant reach_constant() {
  constexpr int kScan = 10000;
  const double a = 1.5 * std::numbers::pi, b = 2.0 * std::numbers::pi;
  const double step = (b - a) / (kScan + 1);
  ReachConstant rc;
  rc.theta.reserve(kScan);
  rc.profile.reserve(kScan);
  int best = 0;
  for (int i = 0; i < kScan; ++i) {
    const double t = a + (i + 1) * step;
    rc.theta.push_back(t);
    rc.profile.push_back(reach_profile(t));
    if (rc.profile[i] > rc.profile[best]) best = i;
  }

  double lo = rc.theta[best] - step, hi = rc.theta[best] + step;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
  double f1 = reach_profile(x1), f2 = reach_profile(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = reach_profile(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = reach_profile(x1);
    }
  }
  rc.theta_star = 0.5 * (lo + hi);
  rc.C_hat = std::max(reach_profile(rc.theta_star), rc.profile[best]);
  return rc;
}

}  // namespace covergeo
