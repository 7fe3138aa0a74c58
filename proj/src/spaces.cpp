#include "morreylab/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "morreylab/parallel.hpp"

namespace morreylab {

namespace {

void require_same_grid(const SampledFunction& f, const Weight& w) {
  if (!(f.grid == w.grid())) throw Error("function and weight live on different grids");
}

// sum over cells (in the given order) of |f|^p w; the common core of every
// strong norm below.
double power_mass(const SampledFunction& f, double p, const Weight& w, const std::vector<std::size_t>& cells) {
  double s = 0.0;
  for (std::size_t i : cells) s += std::pow(std::abs(f.values[i]), p) * w.data.values[i];
  return s;
}

// Largest v^p * sum_{|f| >= v} w over the levels v of |f| on the cells.
//
// The sorted pass locates the best levels; each near-best level is then
// re-summed in cell order with terms v^p w_i <= |f_i|^p w_i, so the result
// never exceeds power_mass(f, p, w, cells) even in floating point.
double level_mass(const SampledFunction& f, double p, const Weight& w, const std::vector<std::size_t>& cells) {
  const auto& fv = f.values;
  const auto& wv = w.data.values;
  std::vector<std::size_t> order(cells);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return std::abs(fv[a]) > std::abs(fv[b]); });
  std::vector<std::pair<double, double>> candidates;  // (approximate mass, level)
  double cum = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const double v = std::abs(fv[order[k]]);
    if (v == 0.0) break;
    cum += wv[order[k]];
    const bool last_of_level = k + 1 == order.size() || std::abs(fv[order[k + 1]]) != v;
    if (last_of_level) candidates.emplace_back(std::pow(v, p) * cum, v);
  }
  if (candidates.empty()) return 0.0;
  double best_approx = 0.0;
  for (const auto& c : candidates) best_approx = std::max(best_approx, c.first);
  double best = 0.0;
  for (const auto& [approx, v] : candidates) {
    if (approx < best_approx * (1.0 - 1e-9)) continue;
    const double vp = std::pow(v, p);
    double exact = 0.0;
    for (std::size_t i : cells)
      if (std::abs(fv[i]) >= v) exact += vp * wv[i];
    best = std::max(best, exact);
  }
  return best;
}

// Shared finishing step: (mass h^n / w(B)^kappa)^{1/p}.
double finish(double mass, double vol, double w_ball_kappa, double p) {
  return std::pow(mass * vol / w_ball_kappa, 1.0 / p);
}

template <class PerBall>
double max_over_family(const BallFamily& balls, PerBall&& per_ball) {
  if (balls.empty()) throw Error("ball family is empty");
  std::vector<double> vals(balls.size());
  parallel_for(balls.size(), [&](std::size_t b) { vals[b] = per_ball(b); });
  double best = 0.0;
  for (double v : vals) best = std::max(best, v);
  return best;
}

std::vector<std::size_t> all_cells(const Grid& g) {
  std::vector<std::size_t> cells(g.size());
  std::iota(cells.begin(), cells.end(), std::size_t{0});
  return cells;
}

}  // namespace

void MorreyParams::validate() const {
  if (!(p >= 1.0)) throw Error("Morrey exponent p must be >= 1");
  if (!(kappa > 0.0) || !(kappa < 1.0)) throw Error("Morrey parameter kappa must lie in (0, 1)");
}

double lp_w_norm(const SampledFunction& f, double p, const Weight& w) {
  if (!(p >= 1.0)) throw Error("Lebesgue exponent p must be >= 1");
  require_same_grid(f, w);
  return std::pow(power_mass(f, p, w, all_cells(f.grid)) * f.grid.cell_volume(), 1.0 / p);
}

double local_distribution(const SampledFunction& f, const Weight& w, const Ball& ball, double level) {
  if (!(level >= 0.0)) throw Error("distribution level must be >= 0");
  require_same_grid(f, w);
  double s = 0.0;
  for (std::size_t i : cells_in(f.grid, ball))
    if (std::abs(f.values[i]) > level) s += w.data.values[i];
  return s * f.grid.cell_volume();
}

double morrey_norm(const SampledFunction& f, const MorreyParams& params, const Weight& w,
                   const BallFamily& balls) {
  params.validate();
  require_same_grid(f, w);
  const double vol = f.grid.cell_volume();
  return max_over_family(balls, [&](std::size_t b) {
    const auto& cells = balls.cells(b);
    double wb = 0.0;
    for (std::size_t i : cells) wb += w.data.values[i];
    return finish(power_mass(f, params.p, w, cells), vol, std::pow(wb * vol, params.kappa), params.p);
  });
}

double weak_morrey_norm(const SampledFunction& f, const MorreyParams& params, const Weight& w,
                        const BallFamily& balls) {
  params.validate();
  require_same_grid(f, w);
  const double vol = f.grid.cell_volume();
  return max_over_family(balls, [&](std::size_t b) {
    const auto& cells = balls.cells(b);
    double wb = 0.0;
    for (std::size_t i : cells) wb += w.data.values[i];
    return finish(level_mass(f, params.p, w, cells), vol, std::pow(wb * vol, params.kappa), params.p);
  });
}

double weak_lp_w_norm(const SampledFunction& f, double p, const Weight& w) {
  if (!(p >= 1.0)) throw Error("Lebesgue exponent p must be >= 1");
  require_same_grid(f, w);
  return finish(level_mass(f, p, w, all_cells(f.grid)), f.grid.cell_volume(), 1.0, p);
}

}  // namespace morreylab
