#include "morreylab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace morreylab {

namespace {

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

// Index range [lo, hi) of cells whose centers satisfy lo_x <= c < hi_x on one axis.
std::array<int, 2> axis_range(const Grid& g, double lo_x, double hi_x) {
  const double h = g.spacing();
  const double L = g.half_width();
  int lo = static_cast<int>(std::ceil((lo_x + L) / h - 0.5));
  int hi = static_cast<int>(std::ceil((hi_x + L) / h - 0.5));
  lo = std::clamp(lo, 0, g.points_per_axis());
  hi = std::clamp(hi, 0, g.points_per_axis());
  // Guard against rounding in the ceil above.
  while (lo > 0 && g.axis_center(lo - 1) >= lo_x) --lo;
  while (lo < g.points_per_axis() && g.axis_center(lo) < lo_x) ++lo;
  while (hi > 0 && g.axis_center(hi - 1) >= hi_x) --hi;
  while (hi < g.points_per_axis() && g.axis_center(hi) < hi_x) ++hi;
  return {lo, std::max(lo, hi)};
}

}  // namespace

Grid::Grid(int dim, double half_width, int points)
    : dim_(dim), half_width_(half_width), points_(points), spacing_(2.0 * half_width / points) {}

Grid Grid::build(int dim, double half_width, int points_per_axis) {
  if (dim != 1 && dim != 2) throw Error("unsupported dimension " + std::to_string(dim));
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw Error("half width must be positive and finite");
  if (points_per_axis < 8 || !is_power_of_two(points_per_axis))
    throw Error("points per axis must be a power of two >= 8, got " +
                std::to_string(points_per_axis));
  return Grid(dim, half_width, points_per_axis);
}

std::size_t Grid::size() const {
  const auto n = static_cast<std::size_t>(points_);
  return dim_ == 1 ? n : n * n;
}

double Grid::cell_volume() const { return dim_ == 1 ? spacing_ : spacing_ * spacing_; }

Point Grid::center(std::size_t index) const {
  const CellCoords c = coords(index);
  return {axis_center(c[0]), dim_ == 2 ? axis_center(c[1]) : 0.0};
}

CellCoords Grid::coords(std::size_t index) const {
  const auto n = static_cast<std::size_t>(points_);
  return {static_cast<int>(index % n), static_cast<int>(index / n)};
}

bool Grid::in_range(const CellCoords& c) const {
  if (c[0] < 0 || c[0] >= points_) return false;
  if (dim_ == 1) return c[1] == 0;
  return c[1] >= 0 && c[1] < points_;
}

double Grid::distance2(const Point& a, const Point& b) const {
  const double dx = a[0] - b[0];
  if (dim_ == 1) return dx * dx;
  const double dy = a[1] - b[1];
  return dx * dx + dy * dy;
}

SampledFunction SampledFunction::zeros(const Grid& grid) {
  return SampledFunction{grid, std::vector<double>(grid.size(), 0.0)};
}

SampledFunction SampledFunction::from_values(const Grid& grid, std::vector<double> values) {
  if (values.size() != grid.size())
    throw Error("value count " + std::to_string(values.size()) + " does not match grid size " +
                std::to_string(grid.size()));
  for (double v : values)
    if (!std::isfinite(v)) throw Error("non-finite sample value");
  return SampledFunction{grid, std::move(values)};
}

SampledFunction sample_on_grid(const Generator& generator, const Grid& grid) {
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = generator(grid.center(i));
    if (!std::isfinite(v)) throw Error("generator is not finite at cell " + std::to_string(i));
    values[i] = v;
  }
  return SampledFunction{grid, std::move(values)};
}

Box full_box(const Grid& grid) {
  const double L = grid.half_width();
  return Box{{-L, grid.dim() == 2 ? -L : 0.0}, {L, grid.dim() == 2 ? L : 1.0}};
}

DyadicCube root_cube(const Grid& grid) { return DyadicCube{{0, 0}, grid.points_per_axis(), 0}; }

DyadicCube make_cube(const Grid& grid, CellCoords anchor, int level) {
  const int n = grid.points_per_axis();
  if (level < 0 || (1 << level) > n) throw Error("cube level out of range");
  const int side = n >> level;
  if (grid.dim() == 1) anchor[1] = 0;
  for (int a = 0; a < grid.dim(); ++a) {
    if (anchor[a] < 0 || anchor[a] + side > n || anchor[a] % side != 0)
      throw Error("cube anchor is not aligned to the dyadic lattice");
  }
  return DyadicCube{anchor, side, level};
}

Point cube_lower_corner(const Grid& grid, const DyadicCube& q) {
  const double L = grid.half_width();
  const double h = grid.spacing();
  return {-L + q.anchor[0] * h, grid.dim() == 2 ? -L + q.anchor[1] * h : 0.0};
}

double cube_side_length(const Grid& grid, const DyadicCube& q) { return q.side * grid.spacing(); }

Point cube_center(const Grid& grid, const DyadicCube& q) {
  Point c = cube_lower_corner(grid, q);
  const double half = 0.5 * cube_side_length(grid, q);
  c[0] += half;
  if (grid.dim() == 2) c[1] += half;
  return c;
}

std::vector<DyadicCube> dyadic_children(const Grid& grid, const DyadicCube& q) {
  if (q.side < 2) throw Error("cube is at cell level and cannot be refined");
  const int half = q.side / 2;
  std::vector<DyadicCube> out;
  const int ny = grid.dim() == 2 ? 2 : 1;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < 2; ++i)
      out.push_back(DyadicCube{{q.anchor[0] + i * half, q.anchor[1] + j * half}, half, q.level + 1});
  return out;
}

bool ball_inside_box(const Grid& grid, const Ball& ball) {
  const double L = grid.half_width();
  for (int a = 0; a < grid.dim(); ++a) {
    if (ball.center[a] - ball.radius < -L || ball.center[a] + ball.radius > L) return false;
  }
  return true;
}

double ball_volume(int dim, double radius) {
  return dim == 1 ? 2.0 * radius : std::numbers::pi * radius * radius;
}

std::vector<std::size_t> cells_in(const Grid& grid, const Region& region) {
  std::vector<std::size_t> out;
  const bool two = grid.dim() == 2;
  if (const auto* box = std::get_if<Box>(&region)) {
    const auto rx = axis_range(grid, box->lo[0], box->hi[0]);
    const auto ry = two ? axis_range(grid, box->lo[1], box->hi[1]) : std::array<int, 2>{0, 1};
    for (int j = ry[0]; j < ry[1]; ++j)
      for (int i = rx[0]; i < rx[1]; ++i) out.push_back(grid.index(i, j));
  } else if (const auto* ball = std::get_if<Ball>(&region)) {
    const double r = ball->radius;
    const double r2 = r * r;
    const auto rx = axis_range(grid, ball->center[0] - r, std::nextafter(ball->center[0] + r, 1e300));
    const auto ry = two ? axis_range(grid, ball->center[1] - r,
                                     std::nextafter(ball->center[1] + r, 1e300))
                        : std::array<int, 2>{0, 1};
    for (int j = ry[0]; j < ry[1]; ++j)
      for (int i = rx[0]; i < rx[1]; ++i) {
        const std::size_t idx = grid.index(i, j);
        if (grid.distance2(grid.center(idx), ball->center) < r2) out.push_back(idx);
      }
  } else {
    const auto& q = std::get<DyadicCube>(region);
    const int ylo = two ? q.anchor[1] : 0;
    const int yhi = two ? q.anchor[1] + q.side : 1;
    for (int j = ylo; j < yhi; ++j)
      for (int i = q.anchor[0]; i < q.anchor[0] + q.side; ++i) out.push_back(grid.index(i, j));
  }
  return out;
}

double quad_integral(const SampledFunction& f, const Region& region) {
  double sum = 0.0;
  for (std::size_t idx : cells_in(f.grid, region)) sum += f.values[idx];
  return sum * f.grid.cell_volume();
}

}  // namespace morreylab
