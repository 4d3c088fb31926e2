#include <doctest.h>

#include <cmath>

#include "covergeo/distance.hpp"
#include "covergeo/errors.hpp"
#include "oracles.hpp"

using namespace covergeo;

TEST_CASE("single source cell") {
  const Geometry g = oracle::grid(5, 5);
  std::vector<std::uint8_t> m(25, 0);
  m[g.index(2, 2)] = 1;
  const GridSet s(g, m);
  const DistanceField d = distance_transform(s, false);
  CHECK(d.squared_cells[g.index(0, 0)] == 8);
  CHECK(d.values[g.index(0, 0)] == doctest::Approx(std::sqrt(8.0)));
  CHECK(d.values[g.index(2, 2)] == 0.0);
}

TEST_CASE("exact against all-pairs on random 2D grids up to 24x24") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> side(1, 24);
  std::uniform_real_distribution<double> dens(0.01, 0.6);
  for (int t = 0; t < 200; ++t) {
    const Geometry g = oracle::grid(side(rng), side(rng));
    auto m = oracle::random_mask(g, dens(rng), rng, false);
    m[std::uniform_int_distribution<std::size_t>(0, m.size() - 1)(rng)] = 1;
    REQUIRE(kernels::squared_edt(g, m) == oracle::edt(g, m));
  }
}

TEST_CASE("exact against all-pairs on random 3D grids") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> side(1, 10);
  for (int t = 0; t < 60; ++t) {
    Geometry g = oracle::grid(side(rng), side(rng), 2 + side(rng) % 8);
    auto m = oracle::random_mask(g, 0.05, rng, false);
    m[0] = 1;
    REQUIRE(kernels::squared_edt(g, m) == oracle::edt(g, m));
  }
}

TEST_CASE("parallel and serial transforms agree") {
  std::mt19937_64 rng(13);
  const Geometry g = oracle::grid(301, 257);
  const auto m = oracle::random_mask(g, 0.001, rng, false);
  CHECK(kernels::squared_edt(g, m) == kernels::squared_edt_serial(g, m));
  const Geometry g3 = oracle::grid(40, 33, 29);
  const auto m3 = oracle::random_mask(g3, 0.002, rng, false);
  CHECK(kernels::squared_edt(g3, m3) == kernels::squared_edt_serial(g3, m3));
}

TEST_CASE("all-source grid is zero and empty source throws") {
  const Geometry g = oracle::grid(6, 4);
  std::vector<std::uint8_t> all(g.cell_count(), 1);
  for (auto v : kernels::squared_edt(g, all)) CHECK(v == 0);
  const GridSet none = GridSet::empty_like(g);
  CHECK_THROWS_WITH_AS(distance_transform(none, false), "empty source", InputError);
}

TEST_CASE("distance is 1-Lipschitz along axes") {
  std::mt19937_64 rng(14);
  const Geometry g = oracle::grid(60, 50);
  const GridSet s(g, oracle::random_mask(g, 0.02, rng, true));
  REQUIRE(!s.empty());
  const DistanceField d = distance_transform(s, false);
  for (int j = 0; j < g.dims[1]; ++j) {
    for (int i = 0; i + 1 < g.dims[0]; ++i) {
      CHECK(std::abs(d.values[g.index(i, j)] - d.values[g.index(i + 1, j)]) <= g.h + 1e-12);
    }
  }
}
