#pragma once

#include <stdexcept>
#include <string>

namespace covergeo {

/// Bad argument or malformed input (exit code 1 from the CLI).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Which geometric or probabilistic precondition failed.
enum class Hypothesis {
  ResolutionFloor,       // delta >= 4h
  StabilityRadius,       // delta <= opening stability radius
  NotOpeningStable,      // E == open(E, delta) on the grid
  ErosionEmpty,          // erode(E, delta) nonempty
  InradiusTooSmall,      // delta < sup dist(x, E^c)
  RegionsTooSmall,       // exponent coefficient > 0
  HoleTooLarge,          // |A| < delta^n n^{-n/2}
  SymDiffTooLarge,       // |S_lambda| < delta^2 / 2
  DeltaTooLargeForScale, // delta < 1 / (5 lambda)
  LambdaBelowThreshold,  // lambda > Lambda_E
  EmptyMinimizer,        // Sigma_lambda nonempty
  NotCompactlyInside,    // A compactly inside U
  ScaleTooCoarse,        // 2 / lambda < rho
};

const char* to_string(Hypothesis h);

/// A precondition of one of the covering results does not hold. `inequality()`
/// names the failed condition with the measured numbers filled in.
class HypothesisError : public std::domain_error {
 public:
  HypothesisError(Hypothesis which, const std::string& inequality);

  Hypothesis which() const noexcept { return which_; }
  const std::string& inequality() const noexcept { return inequality_; }

 private:
  Hypothesis which_;
  std::string inequality_;
};

}  // namespace covergeo
