#include <doctest.h>

#include <cmath>
#include <numbers>

#include "covergeo/errors.hpp"
#include "covergeo/morphology.hpp"
#include "covergeo/shapes.hpp"
#include "oracles.hpp"

using namespace covergeo;
using std::numbers::pi;

TEST_CASE("erosion of a disk is the smaller disk up to a boundary ring") {
  const GridSet d = make_disk(10.0, 1.0);
  const GridSet e = erode(d, 3.0);
  CHECK(std::abs(e.measure() - pi * 49.0) <= 2.0 * 2.0 * pi * 7.0);
  CHECK(erode(d, 0.0) == d);
  CHECK(erode(d, 11.0).empty());
}

TEST_CASE("opening a disk with r < R keeps it up to a ring") {
  const GridSet d = make_disk(12.0, 1.0);
  const GridSet o = open(d, 5.0);
  CHECK(is_subset(o, d));
  CHECK(std::abs(o.measure() - d.measure()) <= 2.0 * pi * 12.0);
  CHECK(open(d, 0.0) == d);
  CHECK(is_opening_stable(d, 5.0));
}

TEST_CASE("dilation pads the geometry") {
  const GridSet d = make_disk(4.0, 1.0);
  const GridSet big = dilate(d, 3.0);
  CHECK(big.geometry().dims[0] == d.geometry().dims[0] + 8);
  CHECK(is_subset(d.with_padding(4), big));
  CHECK_THROWS_AS(dilate(d, -1.0), InputError);
}

TEST_CASE("bowtie opening loses the pinch") {
  const HoleShape s = make_disk_minus_hole(32.0, 8.0, HoleKind::Bowtie, 1.0);
  const GridSet o = open(s.E, 6.0);
  CHECK(o.count() < s.E.count());
  CHECK_FALSE(is_opening_stable(s.E, 6.0));
}

TEST_CASE("stability radii") {
  const double h = 1.0;
  CHECK(opening_stability_radius(make_disk(32.0, h)) >= 30.0 * h);
  CHECK(opening_stability_radius(make_two_disks(32.0, 32.0, h)) >= 30.0 * h);
  const HoleShape bow = make_disk_minus_hole(32.0, 8.0, HoleKind::Bowtie, h);
  CHECK(opening_stability_radius(bow.E) <= 1.5 * h);
  const HoleShape sq = make_disk_minus_hole(32.0, 4.0, HoleKind::Square, h);
  CHECK(opening_stability_radius(sq.E) >= 8.0 * h);
}

TEST_CASE("eta_delta matches the definition") {
  const GridSet d = make_disk(20.0, 1.0);
  const double eta = eta_delta(d, 6.0);
  CHECK(eta >= 5.0);
  CHECK(eta <= 8.0);
  CHECK(eta_delta(d, 0.0) == 0.0);

  const GridSet core = erode(d, 6.0);
  const Geometry& g = d.geometry();
  double worst = 0.0;
  for (std::size_t i : d.cells()) {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (std::size_t k : core.cells()) best = std::min(best, oracle::sq(g.coords(i), g.coords(k)));
    worst = std::max(worst, std::sqrt(double(best)));
  }
  CHECK(eta == doctest::Approx(worst));
  CHECK_THROWS_AS(eta_delta(d, 25.0), HypothesisError);
}

TEST_CASE("thin neck raises eta above delta") {
  const GridSet db = make_dumbbell(16.0, 40.0, 4.0, 1.0);
  CHECK(eta_delta(db, 6.0) > 6.0 + 1.0);
}

TEST_CASE("morphology properties on 10^4 random cases") {
  std::mt19937_64 rng(2024);
  int failures = 0;
  for (int t = 0; t < 10000; ++t) failures += !oracle::morphology_case(rng);
  CHECK(failures == 0);
}

TEST_CASE("opening equals the union of plain openings over larger radii") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> rad(0.0, 3.0);
  for (int t = 0; t < 100; ++t) {
    const Geometry g = oracle::grid(12, 11);
    const auto m = oracle::random_mask(g, 0.75, rng, true);
    const double r = rad(rng);
    const auto got = kernels::open_mask(MaskView{g, m, false}, r);
    REQUIRE(got == oracle::granulometric_open(g, m, r));
  }
}
