#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "morreylab/grid.hpp"
#include "support.hpp"

using namespace morreylab;

TEST_CASE("grid construction") {
  CHECK(Grid::build(1, 1.0, 64).spacing() == 0.03125);
  CHECK(Grid::build(2, 2.0, 32).size() == 1024);
  CHECK(contains(error_of([] { Grid::build(3, 1.0, 64); }), "unsupported dimension"));
  CHECK_FALSE(error_of([] { Grid::build(1, 1.0, 48); }).empty());
  CHECK_FALSE(error_of([] { Grid::build(1, 0.0, 64); }).empty());
}

TEST_CASE("cell geometry") {
  const Grid g = Grid::build(2, 1.0, 8);
  CHECK(g.center(g.index(0, 0))[0] == doctest::Approx(-0.875));
  CHECK(g.coords(g.index(3, 5)) == CellCoords{3, 5});
  CHECK(g.cell_volume() == 0.0625);
}

TEST_CASE("sampling") {
  const Grid g = Grid::build(1, 1.0, 64);
  const auto one = sample_on_grid([](const Point&) { return 1.0; }, g);
  for (double v : one.values) CHECK(v == 1.0);

  const auto x = sample_on_grid([](const Point& p) { return p[0]; }, g);
  for (int i = 0; i < 64; ++i) CHECK(x[i] == -x[63 - i]);

  const auto sing = sample_on_grid([](const Point& p) { return std::pow(std::abs(p[0]), -0.5); }, g);
  for (double v : sing.values) CHECK(std::isfinite(v));

  CHECK(contains(error_of([&] { sample_on_grid([](const Point& p) { return 1.0 / (p[0] - p[0]); }, g); }),
                 "not finite"));
}

TEST_CASE("midpoint quadrature") {
  const Grid g = Grid::build(1, 1.0, 128);
  const auto one = sample_on_grid([](const Point&) { return 1.0; }, g);
  CHECK(quad_integral(one, full_box(g)) == 2.0);
  const auto x = sample_on_grid([](const Point& p) { return p[0]; }, g);
  CHECK(std::abs(quad_integral(x, full_box(g))) < 1e-15);
  const auto x2 = sample_on_grid([](const Point& p) { return p[0] * p[0]; }, g);
  CHECK(std::abs(quad_integral(x2, full_box(g)) - 2.0 / 3.0) < 1e-3);

  // Empty intersection is a zero integral.
  CHECK(quad_integral(one, Box{{0.3, 0.0}, {0.3, 1.0}}) == 0.0);
}

TEST_CASE("quadrature is linear and additive") {
  const Grid g = Grid::build(2, 1.0, 32);
  const auto f = sample_on_grid([](const Point& p) { return std::sin(3 * p[0]) + p[1] * p[1]; }, g);
  const auto h = sample_on_grid([](const Point& p) { return std::exp(p[0] - p[1]); }, g);
  auto mix = f;
  for (std::size_t i = 0; i < mix.size(); ++i) mix.values[i] = 2.5 * f[i] - 1.5 * h[i];
  const std::vector<Region> regions{full_box(g), Ball{{0.1, -0.2}, 0.6}, make_cube(g, {16, 0}, 1)};
  for (const Region& r : regions) {
    const double lhs = quad_integral(mix, r);
    const double rhs = 2.5 * quad_integral(f, r) - 1.5 * quad_integral(h, r);
    CHECK(rel_diff(lhs, rhs) < 1e-12);
  }

  const Box left{{-1.0, -1.0}, {0.25, 1.0}}, right{{0.25, -1.0}, {1.0, 1.0}};
  CHECK(rel_diff(quad_integral(f, full_box(g)), quad_integral(f, left) + quad_integral(f, right)) < 1e-12);

  auto af = f;
  for (auto& v : af.values) v = std::abs(v);
  const double whole = quad_integral(af, full_box(g));
  CHECK(whole >= quad_integral(af, Ball{{0.3, 0.3}, 0.5}));
  CHECK(whole >= quad_integral(af, left));
}

TEST_CASE("ball membership is by cell center, strict") {
  const Grid g = Grid::build(1, 1.0, 8);  // centers at +-0.125, +-0.375, ...
  CHECK(cells_in(g, Ball{{0.0, 0.0}, 0.125}).empty());
  CHECK(cells_in(g, Ball{{0.0, 0.0}, 0.126}).size() == 2);
  CHECK(cells_in(g, Ball{{0.0, 0.0}, 0.375}).size() == 2);
}

TEST_CASE("dyadic children") {
  const Grid g1 = Grid::build(1, 4.0, 32);
  const DyadicCube q = make_cube(g1, {16, 0}, 1);  // [0, 4)
  CHECK(cube_lower_corner(g1, q)[0] == 0.0);
  CHECK(cube_side_length(g1, q) == 4.0);
  const auto kids = dyadic_children(g1, q);
  REQUIRE(kids.size() == 2);
  CHECK(cube_lower_corner(g1, kids[0])[0] == 0.0);
  CHECK(cube_lower_corner(g1, kids[1])[0] == 2.0);
  CHECK(cube_side_length(g1, kids[0]) == 2.0);

  const Grid g2 = Grid::build(2, 1.0, 16);
  const auto quads = dyadic_children(g2, root_cube(g2));
  REQUIRE(quads.size() == 4);
  std::vector<std::size_t> all;
  for (const auto& c : quads) {
    CHECK(cube_side_length(g2, c) == 1.0);
    const auto cells = cells_in(g2, c);
    all.insert(all.end(), cells.begin(), cells.end());
  }
  std::sort(all.begin(), all.end());
  CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
  CHECK(all == cells_in(g2, root_cube(g2)));

  const DyadicCube cell{{3, 0}, 1, 5};
  CHECK(contains(error_of([&] { dyadic_children(g1, cell); }), "at cell level"));
  CHECK_FALSE(error_of([&] { make_cube(g1, {3, 0}, 2); }).empty());
}
