#include <doctest.h>

#include <cmath>
#include <set>

#include "covergeo/errors.hpp"
#include "covergeo/morphology.hpp"
#include "covergeo/partition.hpp"
#include "covergeo/shapes.hpp"
#include "oracles.hpp"

using namespace covergeo;

namespace {

Hypothesis which(const std::function<void()>& f) {
  try {
    f();
  } catch (const HypothesisError& e) {
    return e.which();
  }
  FAIL("no HypothesisError");
  return Hypothesis::ResolutionFloor;
}

// Independent check that every labeled cell lies near its region's seed cube.
bool cells_near_seed(const Partition& P, double reach) {
  const Geometry& g = P.base.geometry();
  const auto off = g.lattice_offset();
  const long m = std::lround(P.ell / g.h);
  for (std::size_t i = 0; i < P.labels.size(); ++i) {
    if (P.labels[i] == 0) continue;
    const Region* R = nullptr;
    for (const auto& r : P.regions) {
      if (r.id == P.labels[i]) R = &r;
    }
    if (R == nullptr) return false;
    const CellCoord c = g.coords(i);
    double d2 = 0.0;
    for (int a = 0; a < g.ndim; ++a) {
      const long x = c[a] + off[a];
      const long lo = R->seed_cube[a] * m, hi = lo + m - 1;
      const long gap = x < lo ? lo - x : x > hi ? x - hi : 0;
      d2 += double(gap) * gap;
    }
    if (std::sqrt(d2) * g.h > reach + 1e-9) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("disk partition is certified good") {
  const GridSet E = make_disk(32.0, 1.0);
  for (double delta : {6.0, 8.0, 12.0}) {
    const Partition P = good_partition(E, delta);
    const GoodCertificate c = certify_good(P, delta);
    CHECK(c.verdict);
    CHECK(c.labels_conserved);
    CHECK(c.min_measure >= delta * delta / 2.0 - c.measure_slack);
    CHECK(c.max_diameter <= 3.0 * delta + c.diameter_slack);
    // Every region holds its whole seed cube.
    for (const auto& r : P.regions) CHECK(r.measure >= P.ell * P.ell - 1e-9);
    CHECK(cells_near_seed(P, delta + grid_tolerance(E.geometry())));
    CHECK(P.ell == std::floor(delta / std::sqrt(2.0) + 1e-9));
  }
}

TEST_CASE("regions tile the set exactly once") {
  const GridSet E = make_two_disks(32.0, 32.0, 1.0);
  const Partition P = good_partition(E, 8.0);
  std::size_t total = 0;
  std::set<std::int32_t> ids;
  for (const auto& r : P.regions) {
    total += r.cells;
    ids.insert(r.id);
  }
  CHECK(total == E.count());
  CHECK(ids.size() == P.regions.size());
  for (std::size_t i = 0; i < P.labels.size(); ++i) CHECK((P.labels[i] != 0) == E.contains(i));
  CHECK(certify_good(P, 8.0).verdict);
}

TEST_CASE("partition is deterministic") {
  const GridSet E = make_disk(24.0, 1.0);
  const Partition a = good_partition(E, 6.0), b = good_partition(E, 6.0);
  CHECK(a.labels == b.labels);
  CHECK(a.regions.size() == b.regions.size());
}

TEST_CASE("single fattened lattice cube gives one region") {
  const double delta = 8.0;
  const int m = 5;  // floor(8 / sqrt 2)
  const Geometry g = oracle::grid(40, 40);
  std::vector<std::uint8_t> cube(g.cell_count(), 0);
  for (int j = 3 * m; j < 4 * m; ++j) {
    for (int i = 3 * m; i < 4 * m; ++i) cube[g.index(i, j)] = 1;
  }
  const auto d2 = oracle::edt(g, cube);
  std::vector<std::uint8_t> e(g.cell_count(), 0);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = d2[i] <= 64;
  const GridSet E(g, e);
  const Partition P = good_partition(E, delta);
  CHECK(P.regions.size() == 1);
  CHECK(P.regions[0].cells == E.count());
  CHECK(certify_good(P, delta).verdict);
}

TEST_CASE("precondition errors") {
  const GridSet E = make_disk(32.0, 1.0);
  CHECK(which([&] { good_partition(E, 3.5); }) == Hypothesis::ResolutionFloor);
  CHECK(which([&] { good_partition(E, 31.5); }) == Hypothesis::StabilityRadius);
  const HoleShape bow = make_disk_minus_hole(32.0, 8.0, HoleKind::Bowtie, 1.0);
  CHECK(which([&] { good_partition(bow.E, 4.0); }) == Hypothesis::StabilityRadius);
  CHECK(which([&] { partition_with_eta(E, 40.0); }) == Hypothesis::InradiusTooSmall);
}

TEST_CASE("eta partition covers a thin neck") {
  const GridSet E = make_dumbbell(16.0, 40.0, 4.0, 1.0);
  const Partition P = partition_with_eta(E, 6.0);
  CHECK(P.fatten_radius > 6.0);
  std::size_t total = 0;
  for (const auto& r : P.regions) total += r.cells;
  CHECK(total == E.count());
  const GoodCertificate c = certify_good(P, 6.0);
  CHECK(c.diam_cap == doctest::Approx(6.0 + 2.0 * P.fatten_radius));
  CHECK(c.verdict);
}

TEST_CASE("delta just below the inradius leaves one seed") {
  // Disk centered on a cell center, so the deepest cell is unique.
  const Geometry g = oracle::grid(31, 31);
  std::vector<std::uint8_t> one(g.cell_count(), 0);
  one[g.index(15, 15)] = 1;
  const auto d2 = oracle::edt(g, one);
  std::vector<std::uint8_t> e(g.cell_count(), 0);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = d2[i] <= 100;
  const GridSet E(g, e);
  const double inradius = max_inner_distance(E);
  const Partition P = partition_with_eta(E, inradius - 0.01);
  CHECK(P.regions.size() == 1);
  CHECK(P.regions[0].cells == E.count());
}

TEST_CASE("restriction") {
  const GridSet E = make_disk(32.0, 1.0);
  const Partition P = good_partition(E, 8.0);

  const Partition same = restrict_partition(P, E);
  CHECK(same.labels == P.labels);
  CHECK(same.removed_measure == 0.0);

  const HoleShape hole = make_disk_minus_hole(32.0, 4.0, HoleKind::Square, 1.0);
  const Partition Q = restrict_partition(P, hole.E);
  CHECK(Q.removed_measure == doctest::Approx(16.0));
  CHECK(Q.regions.size() == P.regions.size());
  const GoodCertificate c = certify_good(Q, 8.0);
  CHECK(c.volume_floor == doctest::Approx(32.0 - 16.0));
  CHECK(c.verdict);

  // Drop one whole region.
  std::vector<std::uint8_t> keep(E.mask().begin(), E.mask().end());
  const std::int32_t gone = P.regions.front().id;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (P.labels[i] == gone) keep[i] = 0;
  }
  const Partition R = restrict_partition(P, GridSet(E.geometry(), keep));
  CHECK(R.regions.size() == P.regions.size() - 1);
  for (const auto& r : R.regions) CHECK(r.id != gone);

  // Cells outside the base.
  const GridSet other = make_disk(32.0, 1.0).with_padding(0);
  std::vector<std::uint8_t> wide(E.geometry().cell_count(), 0);
  wide[E.geometry().index(1, 1)] = 1;
  CHECK_THROWS_AS(restrict_partition(P, GridSet(E.geometry(), wide)), InputError);
  (void)other;
}

TEST_CASE("corrupted labels fail the certificate") {
  const GridSet E = make_disk(20.0, 1.0);
  Partition P = good_partition(E, 6.0);
  REQUIRE(certify_good(P, 6.0).verdict);
  const std::size_t cell = E.cells().front();
  P.labels[cell] = P.labels[cell] == 1 ? 2 : 1;
  const GoodCertificate c = certify_good(P, 6.0);
  CHECK_FALSE(c.labels_conserved);
  CHECK_FALSE(c.verdict);
}

TEST_CASE("almost certificate readings") {
  const HoleShape s = make_disk_minus_hole(32.0, 4.0, HoleKind::Square, 1.0);
  const Partition P = restrict_partition(good_partition(s.U, 8.0), s.E);
  const double alpha = 0.01;
  const AlmostCertificate c = certify_almost(P, s.U, alpha);
  CHECK(c.subset);
  CHECK(c.verdict);
  CHECK(c.coverage_ratio == doctest::Approx(s.E.measure() / s.U.measure()));
  CHECK_FALSE(c.literal_reading);
}
