#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "covergeo/grid_set.hpp"

namespace covergeo {

inline constexpr const char* kGeneratorId = "philox4x32-10/ctr=(sample,block,trial)";

struct SampleSet {
  std::vector<Point> points;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  std::string generator = kGeneratorId;
};

/// N i.i.d. points, uniform on the union of E's cells. Sample i of trial t is a
/// pure function of (seed, t, i).
SampleSet sample_uniform(const GridSet& E, std::size_t N, std::uint64_t seed, std::uint64_t trial = 0);

/// Coverage is judged at cell centers: a cell of E is covered when its center
/// lies within r of the center of a cell holding a sample. The conservative
/// variant shrinks r by h sqrt(n)/2, which makes it sound for the true points.
struct CoverVerdict {
  bool covered = false;
  bool covered_conservative = false;
};
CoverVerdict covers(const GridSet& E, const SampleSet& S, double r);

struct CoverFraction {
  double fraction = 0.0;
  double fraction_conservative = 0.0;
};
CoverFraction covered_fraction(const GridSet& E, const SampleSet& S, double r);

struct Mode {
  enum Kind { Full, Almost } kind = Full;
  double alpha = 0.0;  // Almost: success iff covered fraction >= 1 - alpha
};

struct TrialConfig {
  double r = 0.0;
  std::size_t N = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  Mode mode;
  std::optional<double> bound;          // compared against the Wilson upper end
  const GridSet* sample_from = nullptr;  // defaults to E
};

struct TrialReport {
  std::size_t trials = 0;
  std::size_t N = 0;
  double r = 0.0;
  std::size_t successes = 0;
  std::size_t successes_conservative = 0;
  double p_hat = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 0.0;
  std::vector<double> fractions;  // Almost mode only, in trial order
  std::optional<double> bound;
  std::optional<bool> verdict;    // wilson_hi >= bound - 1e-9
  bool operator==(const TrialReport&) const = default;
};

inline constexpr double kWilsonZ = 1.959963984540054;

/// Two-sided 95% Wilson score interval.
std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials, double z = kWilsonZ);

/// Trials run in parallel; the report does not depend on the thread count.
/// Throws InputError for trials == 0, or for a bound with fewer than 100 trials.
TrialReport estimate_probability(const GridSet& E, const TrialConfig& cfg);

namespace kernels {
TrialReport estimate_probability_serial(const GridSet& E, const TrialConfig& cfg);
}

}  // namespace covergeo
