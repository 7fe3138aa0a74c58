#include "morreylab/czdecomp.hpp"

#include <algorithm>
#include <cmath>

namespace morreylab {

namespace {

double abs_average(const SampledFunction& f, const std::vector<std::size_t>& cells) {
  double s = 0.0;
  for (std::size_t i : cells) s += std::abs(f.values[i]);
  return s / static_cast<double>(cells.size());
}

bool canonical_less(const DyadicCube& a, const DyadicCube& b) {
  if (a.level != b.level) return a.level < b.level;
  if (a.anchor[1] != b.anchor[1]) return a.anchor[1] < b.anchor[1];
  return a.anchor[0] < b.anchor[0];
}

DyadicCube parent_of(const DyadicCube& q) {
  const int side = q.side * 2;
  return DyadicCube{{q.anchor[0] - q.anchor[0] % side, q.anchor[1] - q.anchor[1] % side}, side, q.level - 1};
}

}  // namespace

SampledFunction CZDecomposition::bad_total() const {
  auto out = SampledFunction::zeros(good.grid);
  for (const auto& b : bad_parts) {
    const auto cells = cells_in(good.grid, b.cube);
    for (std::size_t k = 0; k < cells.size(); ++k) out.values[cells[k]] += b.values[k];
  }
  return out;
}

CZDecomposition cz_decompose(const SampledFunction& f, double sigma, const DyadicCube& root) {
  if (!(sigma > 0.0)) throw Error("decomposition height sigma must be positive");
  const Grid& g = f.grid;
  const double root_avg = abs_average(f, cells_in(g, root));
  if (root_avg > sigma)
    throw Error("average of |f| over the root cube exceeds sigma; the stopping time cannot start");

  CZDecomposition d;
  d.sigma = sigma;
  d.root = root;
  std::vector<DyadicCube> pending{root};
  while (!pending.empty()) {
    const DyadicCube q = pending.back();
    pending.pop_back();
    if (q.side < 2) continue;
    for (const auto& child : dyadic_children(g, q)) {
      if (abs_average(f, cells_in(g, child)) > sigma)
        d.cubes.push_back(child);
      else
        pending.push_back(child);
    }
  }
  std::sort(d.cubes.begin(), d.cubes.end(), canonical_less);

  d.good = f;
  for (const auto& q : d.cubes) {
    const auto cells = cells_in(g, q);
    double s = 0.0;
    for (std::size_t i : cells) s += f.values[i];
    const double avg = s / static_cast<double>(cells.size());
    BadPart b{q, cube_center(g, q), cube_side_length(g, q), {}};
    b.values.reserve(cells.size());
    for (std::size_t i : cells) {
      b.values.push_back(f.values[i] - avg);
      d.good.values[i] = avg;
    }
    d.bad_parts.push_back(std::move(b));
  }
  return d;
}

CZReport cz_verify(const CZDecomposition& d, const SampledFunction& f, double sigma) {
  CZReport rep;
  const Grid& g = f.grid;
  const double upper = std::ldexp(sigma, g.dim());
  const double vol = g.cell_volume();
  auto fail = [&](bool& flag, const std::string& what) {
    if (flag) rep.failures.push_back(what);
    flag = false;
  };

  double f_l1 = 0.0, f_max = 0.0;
  for (double v : f.values) {
    f_l1 += std::abs(v);
    f_max = std::max(f_max, std::abs(v));
  }
  f_l1 *= vol;

  std::vector<int> owner(g.size(), -1);
  for (std::size_t c = 0; c < d.cubes.size(); ++c) {
    const auto& q = d.cubes[c];
    const auto cells = cells_in(g, q);
    const double avg = abs_average(f, cells);
    rep.max_cube_average = std::max(rep.max_cube_average, avg);
    rep.total_cube_measure += static_cast<double>(cells.size()) * vol;
    if (!(avg > sigma && avg <= upper)) fail(rep.stopping_bounds, "cube average outside (sigma, 2^n sigma]");
    if (!(q == d.root) && abs_average(f, cells_in(g, parent_of(q))) > sigma)
      fail(rep.stopping_time, "parent cube average exceeds sigma");
    for (std::size_t i : cells) {
      if (owner[i] >= 0) fail(rep.disjoint, "selected cubes overlap");
      owner[i] = static_cast<int>(c);
    }
  }

  for (std::size_t i : cells_in(g, d.root))
    if (std::abs(d.good.values[i]) > upper) fail(rep.good_bounded, "|g| exceeds 2^n sigma");

  const auto bad = d.bad_total();
  const double tol = 1e-12 * std::max(1.0, f_max);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double err = std::abs(f.values[i] - d.good.values[i] - bad.values[i]);
    rep.max_reconstruction_error = std::max(rep.max_reconstruction_error, err);
    if (err > tol) fail(rep.reconstruction, "f != g + b");
  }

  for (const auto& b : d.bad_parts) {
    double integral = 0.0, l1 = 0.0;
    for (double v : b.values) {
      integral += v;
      l1 += std::abs(v);
    }
    integral *= vol;
    l1 *= vol;
    rep.max_bad_integral = std::max(rep.max_bad_integral, std::abs(integral));
    if (std::abs(integral) > 1e-12 * f_l1) fail(rep.mean_zero, "bad part has nonzero integral");
    double f_on_q = 0.0;
    for (std::size_t i : cells_in(g, b.cube)) f_on_q += std::abs(f.values[i]);
    f_on_q *= vol;
    if (l1 > 2.0 * f_on_q * (1.0 + 1e-12)) fail(rep.bad_l1, "||b_i||_1 exceeds 2 int_Q |f|");
  }
  return rep;
}

}  // namespace morreylab
