#include <doctest.h>

#include <cmath>
#include <numbers>

#include "covergeo/errors.hpp"
#include "covergeo/measure.hpp"
#include "covergeo/shapes.hpp"

using namespace covergeo;
using std::numbers::pi;

TEST_CASE("unit disk at h = 1/64 lands on 130 x 130") {
  const GridSet d = make_disk(1.0, 1.0 / 64.0);
  CHECK(d.geometry().dims[0] == 130);
  CHECK(d.geometry().dims[1] == 130);
  CHECK(std::abs(d.measure() - pi) <= 2.0 * pi / 64.0);
}

TEST_CASE("dumbbell area matches the analytic value") {
  const double r = 16.0, s = 40.0, w = 4.0, h = 0.5;
  const GridSet d = make_dumbbell(r, s, w, h);
  const double strip = 0.5 * w * std::sqrt(r * r - 0.25 * w * w) + r * r * std::asin(0.5 * w / r);
  const double exact = 2.0 * pi * r * r + s * w - 2.0 * strip;
  CHECK(std::abs(d.measure() - exact) <= h * (4.0 * pi * r + 2.0 * s));
}

TEST_CASE("holes have the stated cell counts") {
  const HoleShape sq = make_disk_minus_hole(20.0, 4.0, HoleKind::Square, 1.0);
  CHECK(sq.A.count() == 16);
  CHECK(sq.E.count() + 16 == sq.U.count());
  const HoleShape bow = make_disk_minus_hole(20.0, 4.0, HoleKind::Bowtie, 1.0);
  CHECK(bow.A.count() == 32);
}

TEST_CASE("cube and ball") {
  CHECK(make_cube(10.0, 1.0).count() == 100);
  CHECK(make_cube(6.0, 1.0, 3).count() == 216);
  const GridSet b = make_disk(8.0, 1.0, 3);
  CHECK(std::abs(b.measure() - 4.0 / 3.0 * pi * 512.0) <= 4.0 * pi * 64.0);
}

TEST_CASE("degenerate parameters are rejected") {
  CHECK_THROWS_AS(make_disk(0.0, 1.0), InputError);
  CHECK_THROWS_AS(make_disk(1.0, -1.0), InputError);
  CHECK_THROWS_AS(make_dumbbell(4.0, 10.0, 9.0, 1.0), InputError);
  CHECK_THROWS_AS(make_disk_minus_hole(4.0, 10.0, HoleKind::Square, 1.0), InputError);
}

TEST_CASE("shape strings") {
  const ShapeSpec s = parse_shape("two-disks:r=3,sep=4", 0.5);
  CHECK(s.kind == "two-disks");
  CHECK(s.number("r") == 3.0);
  CHECK(s.number_or("missing", 7.0) == 7.0);
  CHECK(make_shape(s) == make_two_disks(3.0, 4.0, 0.5));
  CHECK(make_shape(parse_shape("disk-minus-hole:r=10,a=2,hole=bowtie", 1.0)) ==
        make_disk_minus_hole(10.0, 2.0, HoleKind::Bowtie, 1.0).E);
  CHECK_THROWS_AS(make_shape(parse_shape("torus:r=1", 1.0)), InputError);
  CHECK_THROWS_AS(parse_shape("disk:r", 1.0).number("r"), InputError);
}
