#include <doctest.h>

#include <cmath>
#include <numbers>

#include "covergeo/errors.hpp"
#include "covergeo/measure.hpp"
#include "covergeo/shapes.hpp"
#include "oracles.hpp"

using namespace covergeo;
using std::numbers::pi;

TEST_CASE("planar weights integrate to pi") {
  double total = 0.0;
  for (const auto& e : crofton_neighborhood(2, 1.0)) {
    const double len = std::hypot(double(e.offset[0]), double(e.offset[1]));
    total += 2.0 * e.weight * len;
  }
  CHECK(total == doctest::Approx(pi));
  CHECK(crofton_neighborhood(3, 1.0).size() == 13);
  CHECK_THROWS_AS(crofton_neighborhood(4, 1.0), InputError);
}

TEST_CASE("disk perimeter within 2 percent") {
  for (double R : {20.0, 40.0}) {
    const GridSet d = make_disk(R, 1.0);
    CHECK(std::abs(perimeter(d) - 2.0 * pi * R) <= 0.02 * 2.0 * pi * R);
  }
  // Resolution independent: same disk, finer grid.
  const GridSet d = make_disk(1.0, 1.0 / 40.0);
  CHECK(std::abs(perimeter(d) - 2.0 * pi) <= 0.02 * 2.0 * pi);
}

TEST_CASE("square perimeter within 2 percent once corners are negligible") {
  const GridSet sq = make_cube(200.0, 1.0);
  CHECK(std::abs(perimeter(sq) - 800.0) <= 0.02 * 800.0);
  const GridSet small = make_cube(20.0, 1.0);
  CHECK(std::abs(perimeter(small) - 80.0) <= 0.05 * 80.0);
}

TEST_CASE("empty set has zero perimeter") {
  CHECK(perimeter(GridSet::empty_like(oracle::grid(5, 5))) == 0.0);
}

TEST_CASE("ball surface area") {
  const GridSet b = make_disk(15.0, 1.0, 3);
  CHECK(std::abs(perimeter(b) - 4.0 * pi * 225.0) <= 0.05 * 4.0 * pi * 225.0);
}

TEST_CASE("diameter of simple clouds") {
  const std::vector<CellCoord> one{{3, 4, 0}};
  CHECK(diameter(one, 0.5, 2).value == doctest::Approx(0.5 * std::sqrt(2.0)));
  const std::vector<CellCoord> two{{0, 0, 0}, {7, 0, 0}};
  CHECK(diameter(two, 1.0, 2).value == doctest::Approx(7.0 + std::sqrt(2.0)));
  CHECK_THROWS_AS(diameter(std::vector<CellCoord>{}, 1.0, 2), InputError);
}

TEST_CASE("diameter against all pairs") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> coord(-40, 40), size(1, 300);
  for (int t = 0; t < 200; ++t) {
    const int ndim = t % 2 ? 3 : 2;
    std::vector<CellCoord> pts(size(rng));
    for (auto& p : pts) p = {coord(rng), coord(rng), ndim == 3 ? coord(rng) : 0};
    REQUIRE(diameter(pts, 1.0, ndim).max_squared_cells == oracle::max_sq_pairwise(pts));
  }
  // Collinear and duplicate points.
  std::vector<CellCoord> line;
  for (int i = 0; i < 10; ++i) line.push_back({i, i, 0});
  line.push_back({0, 0, 0});
  CHECK(diameter(line, 1.0, 2).max_squared_cells == 162);
}
