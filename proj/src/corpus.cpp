#include "morreylab/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace morreylab {

namespace {

std::size_t param_count(FunctionKind kind) {
  switch (kind) {
    case FunctionKind::Zero: return 0;
    case FunctionKind::Bump: return 4;
    case FunctionKind::BumpPair: return 6;
    case FunctionKind::Indicator: return 3;
    case FunctionKind::Oscillating: return 4;
  }
  return 0;
}

double smooth_bump(const Point& x, double cx, double cy, double width, int dim) {
  const double dx = x[0] - cx, dy = dim == 2 ? x[1] - cy : 0.0;
  const double s2 = (dx * dx + dy * dy) / (width * width);
  if (s2 >= 1.0) return 0.0;
  const double u = 1.0 - s2;
  return u * u * u;
}

// Keeps |c| + width <= 1/2 (units of L) and width >= min_width.
void clamp_disc(double& cx, double& cy, double& width, int dim, double min_width) {
  width = std::clamp(width, min_width, 0.45);
  if (dim == 1) cy = 0.0;
  const double reach = 0.5 - width;
  const double r = std::hypot(cx, cy);
  if (r > reach) {
    cx *= reach / r;
    cy *= reach / r;
  }
}

}  // namespace

std::string to_string(FunctionKind kind) {
  switch (kind) {
    case FunctionKind::Zero: return "zero";
    case FunctionKind::Bump: return "bump";
    case FunctionKind::BumpPair: return "pair";
    case FunctionKind::Indicator: return "indicator";
    case FunctionKind::Oscillating: return "oscillating";
  }
  return "?";
}

FunctionKind function_kind_from_string(const std::string& name) {
  for (auto k : {FunctionKind::Zero, FunctionKind::Bump, FunctionKind::BumpPair, FunctionKind::Indicator,
                 FunctionKind::Oscillating})
    if (to_string(k) == name) return k;
  throw Error("unknown function kind '" + name + "'");
}

std::string FunctionSpec::descriptor() const {
  std::ostringstream os;
  os.precision(6);
  os << to_string(kind) << "(";
  for (std::size_t i = 0; i < params.size(); ++i) os << (i ? "," : "") << params[i];
  os << ")";
  return os.str();
}

FunctionSpec FunctionSpec::clamped(int dim, double min_width) const {
  FunctionSpec out = *this;
  if (out.params.size() != param_count(kind)) throw Error("wrong parameter count for " + to_string(kind));
  auto& p = out.params;
  switch (kind) {
    case FunctionKind::Zero: break;
    case FunctionKind::Bump:
    case FunctionKind::Oscillating: clamp_disc(p[0], p[1], p[2], dim, min_width); break;
    case FunctionKind::Indicator: clamp_disc(p[0], p[1], p[2], dim, min_width); break;
    case FunctionKind::BumpPair:
      clamp_disc(p[0], p[1], p[2], dim, min_width);
      clamp_disc(p[3], p[4], p[5], dim, min_width);
      break;
  }
  if (kind == FunctionKind::Oscillating) p[3] = std::clamp(p[3], 0.0, 64.0);
  return out;
}

SampledFunction FunctionSpec::realize(const Grid& grid) const {
  if (params.size() != param_count(kind)) throw Error("wrong parameter count for " + to_string(kind));
  const double L = grid.half_width();
  const int dim = grid.dim();
  const auto& p = params;
  Generator gen;
  switch (kind) {
    case FunctionKind::Zero: gen = [](const Point&) { return 0.0; }; break;
    case FunctionKind::Bump:
      gen = [&](const Point& x) { return p[3] * smooth_bump(x, p[0] * L, p[1] * L, p[2] * L, dim); };
      break;
    case FunctionKind::BumpPair:
      gen = [&](const Point& x) {
        return smooth_bump(x, p[0] * L, p[1] * L, p[2] * L, dim) - smooth_bump(x, p[3] * L, p[4] * L, p[5] * L, dim);
      };
      break;
    case FunctionKind::Indicator:
      gen = [&](const Point& x) {
        const double dx = x[0] - p[0] * L, dy = dim == 2 ? x[1] - p[1] * L : 0.0;
        return dx * dx + dy * dy < (p[2] * L) * (p[2] * L) ? 1.0 : 0.0;
      };
      break;
    case FunctionKind::Oscillating:
      gen = [&](const Point& x) {
        const double b = smooth_bump(x, p[0] * L, p[1] * L, p[2] * L, dim);
        return b == 0.0 ? 0.0 : b * std::cos(2.0 * std::numbers::pi * p[3] * (x[0] - p[0] * L) / L);
      };
      break;
  }
  return sample_on_grid(gen, grid);
}

void Corpus::validate() const {
  if (functions.empty()) throw Error("corpus has no functions");
  if (weight_exponents.empty()) throw Error("corpus has no weights");
  const double half = 0.5 * grid.half_width();
  for (const auto& cf : functions) {
    if (!(cf.values.grid == grid)) throw Error("corpus function lives on a different grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (cf.values.values[i] == 0.0) continue;
      const Point x = grid.center(i);
      if (std::abs(x[0]) > half || std::abs(x[1]) > half)
        throw Error("corpus function " + cf.spec.descriptor() + " is not supported in the half box");
    }
  }
  for (double a : weight_exponents)
    if (!(a > -grid.dim())) throw Error("corpus weight exponent is not locally integrable");
}

double minimum_width(const Grid& grid) { return 4.0 * grid.spacing() / grid.half_width(); }

Corpus corpus_from_specs(const Grid& grid, const std::vector<FunctionSpec>& specs,
                         std::vector<double> weight_exponents, std::uint64_t seed) {
  Corpus c;
  c.grid = grid;
  c.seed = seed;
  c.weight_exponents = std::move(weight_exponents);
  for (const auto& s : specs) c.functions.push_back({s, s.realize(grid)});
  c.validate();
  return c;
}

Corpus default_corpus(const Grid& grid, std::uint64_t seed) {
  const bool two = grid.dim() == 2;
  // Second coordinate only matters in two dimensions.
  auto y = [&](double v) { return two ? v : 0.0; };
  std::vector<FunctionSpec> specs = {
      {FunctionKind::Bump, {0.0, y(0.0), 0.10, 1.0}},
      {FunctionKind::Bump, {0.20, y(-0.10), 0.05, 2.0}},
      {FunctionKind::Bump, {-0.30, y(0.10), 0.15, 0.5}},
      {FunctionKind::BumpPair, {-0.10, y(0.0), 0.08, 0.10, y(0.0), 0.08}},
      {FunctionKind::BumpPair, {-0.35, y(0.05), 0.05, 0.30, y(-0.05), 0.12}},
      {FunctionKind::BumpPair, {0.0, y(0.10), 0.20, 0.15, y(-0.10), 0.03}},
      {FunctionKind::Indicator, {0.0, y(0.0), 0.10}},
      {FunctionKind::Indicator, {0.25, y(0.10), 0.05}},
      {FunctionKind::Indicator, {-0.20, y(-0.10), 0.20}},
      {FunctionKind::Oscillating, {0.0, y(0.0), 0.30, 5.0}},
      {FunctionKind::Oscillating, {0.10, y(0.10), 0.20, 10.0}},
      {FunctionKind::Oscillating, {-0.20, y(-0.10), 0.15, 20.0}},
  };
  const double n = grid.dim();
  return corpus_from_specs(grid, specs, {0.0, -n / 4.0, -n / 2.0}, seed);
}

}  // namespace morreylab
