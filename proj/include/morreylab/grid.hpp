#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace morreylab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unused trailing coordinate is 0 in one dimension.
using Point = std::array<double, 2>;
using CellCoords = std::array<int, 2>;

/// Uniform Cartesian grid on the box [-L, L]^n with N cells per axis.
/// Cell centers sit at -L + (i + 1/2) h, so the origin is never sampled.
class Grid {
 public:
  Grid() = default;
  static Grid build(int dim, double half_width, int points_per_axis);

  int dim() const { return dim_; }
  double half_width() const { return half_width_; }
  int points_per_axis() const { return points_; }
  double spacing() const { return spacing_; }
  std::size_t size() const;
  double cell_volume() const;

  double axis_center(int i) const { return -half_width_ + (i + 0.5) * spacing_; }
  Point center(std::size_t index) const;
  CellCoords coords(std::size_t index) const;
  std::size_t index(int i0, int i1 = 0) const {
    return static_cast<std::size_t>(i1) * static_cast<std::size_t>(points_) +
           static_cast<std::size_t>(i0);
  }
  bool in_range(const CellCoords& c) const;
  double distance2(const Point& a, const Point& b) const;

  bool operator==(const Grid& other) const = default;

 private:
  Grid(int dim, double half_width, int points);

  int dim_ = 1;
  double half_width_ = 1.0;
  int points_ = 8;
  double spacing_ = 0.25;
};

struct SampledFunction {
  Grid grid;
  std::vector<double> values;

  static SampledFunction zeros(const Grid& grid);
  static SampledFunction from_values(const Grid& grid, std::vector<double> values);

  double operator[](std::size_t i) const { return values[i]; }
  std::size_t size() const { return values.size(); }
};

using Generator = std::function<double(const Point&)>;

SampledFunction sample_on_grid(const Generator& generator, const Grid& grid);

/// Half-open axis-aligned box [lo, hi).
struct Box {
  Point lo{};
  Point hi{};
};

/// Open ball; a cell belongs to it iff its center does.
struct Ball {
  Point center{};
  double radius = 0.0;
};

/// Dyadic cube in cell units. Level 0 is the whole grid.
struct DyadicCube {
  CellCoords anchor{};
  int side = 1;
  int level = 0;

  bool operator==(const DyadicCube&) const = default;
};

using Region = std::variant<Box, Ball, DyadicCube>;

Box full_box(const Grid& grid);
DyadicCube root_cube(const Grid& grid);
DyadicCube make_cube(const Grid& grid, CellCoords anchor, int level);
Point cube_lower_corner(const Grid& grid, const DyadicCube& q);
double cube_side_length(const Grid& grid, const DyadicCube& q);
Point cube_center(const Grid& grid, const DyadicCube& q);
std::vector<DyadicCube> dyadic_children(const Grid& grid, const DyadicCube& q);

bool ball_inside_box(const Grid& grid, const Ball& ball);
double ball_volume(int dim, double radius);

/// Cells of the region in ascending index order.
std::vector<std::size_t> cells_in(const Grid& grid, const Region& region);

double quad_integral(const SampledFunction& f, const Region& region);

}  // namespace morreylab
