#include <doctest.h>

#include <cmath>
#include <omp.h>

#include "covergeo/errors.hpp"
#include "covergeo/montecarlo.hpp"
#include "covergeo/philox.hpp"
#include "covergeo/shapes.hpp"
#include "oracles.hpp"

using namespace covergeo;

TEST_CASE("philox known answers") {
  using A = PhiloxCounter;
  CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) == A{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu}) ==
        A{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u}) ==
        A{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("bounded draws and open unit interval") {
  CHECK(bounded(0, 7) == 0);
  CHECK(bounded(~std::uint64_t(0), 7) == 6);
  CHECK(unit_open(0) > 0.0);
  CHECK(unit_open(0xffffffffu) < 1.0);
}

TEST_CASE("samples are reproducible and inside E") {
  const GridSet E = make_dumbbell(6.0, 16.0, 2.0, 0.5);
  const SampleSet a = sample_uniform(E, 500, 99, 3), b = sample_uniform(E, 500, 99, 3);
  CHECK(a.points == b.points);
  CHECK(a.generator == std::string(kGeneratorId));
  CHECK(sample_uniform(E, 500, 99, 4).points != a.points);
  // Prefixes agree: sample i depends on (seed, trial, i) only.
  const SampleSet c = sample_uniform(E, 100, 99, 3);
  CHECK(std::equal(c.points.begin(), c.points.end(), a.points.begin()));
  const Geometry& g = E.geometry();
  for (const Point& p : a.points) {
    const int i = int(std::floor((p[0] - g.origin[0]) / g.h)), j = int(std::floor((p[1] - g.origin[1]) / g.h));
    REQUIRE(E.contains(i, j));
  }
  const SampleSet one = sample_uniform(E, 1, 5);
  CHECK(one.points.size() == 1);
}

TEST_CASE("cell choice is uniform (chi-square)") {
  // Half of a rectangle's cells.
  const Geometry g = oracle::grid(42, 22);
  std::vector<std::uint8_t> m(g.cell_count(), 0);
  for (int j = 1; j < 21; ++j) {
    for (int i = 1; i < 21; ++i) m[g.index(i, j)] = 1;
  }
  const GridSet E(g, m);
  const std::size_t N = 100000, K = E.count();
  const SampleSet s = sample_uniform(E, N, 7);
  std::vector<double> count(g.cell_count(), 0.0);
  double mean_dx = 0.0;
  for (const Point& p : s.points) {
    const int i = int(std::floor(p[0])), j = int(std::floor(p[1]));
    count[g.index(i, j)] += 1.0;
    mean_dx += p[0] - i;
  }
  const double expect = double(N) / K;
  double chi2 = 0.0;
  for (std::size_t c : E.cells()) chi2 += (count[c] - expect) * (count[c] - expect) / expect;
  // Wilson-Hilferty upper 0.1% point with K - 1 degrees of freedom.
  const double k = double(K - 1), z = 3.090232;
  const double crit = k * std::pow(1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k)), 3.0);
  CHECK(chi2 < crit);
  CHECK(mean_dx / N == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("covers on hand-built samples") {
  const GridSet E = make_disk(6.0, 1.0);
  SampleSet s;
  s.points = {{0.1, 0.1, 0.0}};
  CHECK(covers(E, s, 6.0 + 2.0).covered);
  CHECK_FALSE(covers(E, s, 0.01).covered);
  CHECK(covered_fraction(E, s, 100.0).fraction == 1.0);
  CHECK(covered_fraction(E, s, 0.01).fraction == doctest::Approx(1.0 / E.count()));
}

TEST_CASE("covers and covered_fraction against brute force") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> rad(0.5, 4.0);
  for (int t = 0; t < 20; ++t) {
    const Geometry g = oracle::grid(16, 14, 1, t % 2 ? 1.0 : 0.5);
    const GridSet E(g, oracle::random_mask(g, 0.6, rng, true));
    if (E.empty()) continue;
    const SampleSet s = sample_uniform(E, 3 + t, 1000 + t);
    const double r = rad(rng) * g.h;
    const std::size_t hit = oracle::covered_cells(E, s.points, r);
    CHECK(covers(E, s, r).covered == (hit == E.count()));
    CHECK(covered_fraction(E, s, r).fraction == doctest::Approx(double(hit) / E.count()));
    const double rc = r - 0.5 * g.h * std::sqrt(2.0);
    const std::size_t hit_c = rc < 0 ? 0 : oracle::covered_cells(E, s.points, rc);
    if (rc >= 0) CHECK(covered_fraction(E, s, r).fraction_conservative == doctest::Approx(double(hit_c) / E.count()));
  }
}

TEST_CASE("trial estimates") {
  const GridSet E = make_disk(16.0, 1.0);
  TrialConfig cfg;
  cfg.r = 12.0;
  cfg.N = 40;
  cfg.trials = 200;
  cfg.seed = 5;
  const TrialReport a = estimate_probability(E, cfg);
  const TrialReport b = kernels::estimate_probability_serial(E, cfg);
  CHECK(a == b);
  omp_set_num_threads(3);
  CHECK(estimate_probability(E, cfg) == a);
  omp_set_num_threads(1);
  CHECK(estimate_probability(E, cfg) == a);
  CHECK(a.wilson_lo <= a.p_hat);
  CHECK(a.p_hat <= a.wilson_hi);
  CHECK(a.successes_conservative <= a.successes);

  TrialConfig zero = cfg;
  zero.N = 0;
  CHECK(estimate_probability(E, zero).p_hat == 0.0);
  zero.trials = 0;
  CHECK_THROWS_AS(estimate_probability(E, zero), InputError);
  TrialConfig few = cfg;
  few.trials = 50;
  few.bound = 0.5;
  CHECK_THROWS_AS(estimate_probability(E, few), InputError);

  TrialConfig almost = cfg;
  almost.mode = {Mode::Almost, 0.05};
  almost.r = 4.0;
  const TrialReport al = estimate_probability(E, almost);
  CHECK(al.fractions.size() == almost.trials);
  std::size_t ok = 0;
  for (double f : al.fractions) ok += f >= 0.95;
  CHECK(ok == al.successes);
}

TEST_CASE("estimates grow with N and r") {
  const GridSet E = make_disk(12.0, 1.0);
  TrialConfig cfg;
  cfg.r = 6.0;
  cfg.trials = 300;
  cfg.seed = 8;
  double prev = 0.0, slack = 0.0;
  for (std::size_t N : {5, 10, 20, 40, 80}) {
    cfg.N = N;
    const TrialReport r = estimate_probability(E, cfg);
    CHECK(r.p_hat + slack >= prev);
    slack = r.wilson_hi - r.wilson_lo;
    prev = r.p_hat;
  }
  cfg.N = 20;
  prev = 0.0;
  for (double r : {2.0, 4.0, 6.0, 9.0, 14.0}) {
    cfg.r = r;
    const TrialReport rep = estimate_probability(E, cfg);
    CHECK(rep.p_hat + slack >= prev);
    prev = rep.p_hat;
  }
}

TEST_CASE("Wilson interval") {
  const auto [lo, hi] = wilson_interval(50, 100);
  CHECK(lo == doctest::Approx(0.4038).epsilon(1e-3));
  CHECK(hi == doctest::Approx(0.5962).epsilon(1e-3));
  const auto [l0, h0] = wilson_interval(0, 20);
  CHECK(l0 == 0.0);
  CHECK(h0 > 0.0);
  const auto [l1, h1] = wilson_interval(20, 20);
  CHECK(h1 == doctest::Approx(1.0));
  CHECK(l1 < 1.0);
  const auto [a, b] = wilson_interval(300, 1000);
  const auto [c, d] = wilson_interval(600, 2000);
  CHECK((d - c) / (b - a) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.05));
}
