#include "morreylab/sqfn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "morreylab/parallel.hpp"

namespace morreylab {

namespace {

constexpr double kLadderSlack = 1e-9;

void require_lambda(double lambda) {
  if (!(lambda > 1.0)) throw Error("g* parameter lambda must be > 1");
}

// Nonzero-sample counts over axis-aligned windows, for skipping empty ones.
class SupportIndex {
 public:
  explicit SupportIndex(const SampledFunction& f) : n_(f.grid.points_per_axis()), dim_(f.grid.dim()) {
    const std::size_t stride = static_cast<std::size_t>(n_) + 1;
    table_.assign(dim_ == 1 ? stride : stride * stride, 0);
    if (dim_ == 1) {
      for (int i = 0; i < n_; ++i) table_[i + 1] = table_[i] + (f.values[i] != 0.0);
    } else {
      for (int j = 0; j < n_; ++j)
        for (int i = 0; i < n_; ++i)
          table_[(j + 1) * stride + (i + 1)] = table_[j * stride + (i + 1)] + table_[(j + 1) * stride + i] -
                                               table_[j * stride + i] +
                                               (f.values[f.grid.index(i, j)] != 0.0);
    }
  }

  // Any nonzero sample with coords within reach of c (per axis)?
  bool any_near(const CellCoords& c, int reach) const {
    const int x0 = std::max(0, c[0] - reach), x1 = std::min(n_, c[0] + reach + 1);
    if (x0 >= x1) return false;
    if (dim_ == 1) return table_[x1] - table_[x0] > 0;
    const int y0 = std::max(0, c[1] - reach), y1 = std::min(n_, c[1] + reach + 1);
    if (y0 >= y1) return false;
    const std::size_t s = static_cast<std::size_t>(n_) + 1;
    return table_[y1 * s + x1] - table_[y0 * s + x1] - table_[y1 * s + x0] + table_[y0 * s + x0] > 0;
  }

 private:
  int n_;
  int dim_;
  std::vector<long> table_;
};

double convolve_at(const SampledFunction& f, const LatticeTaps& taps, const CellCoords& y) {
  const Grid& g = f.grid;
  double acc = 0.0;
  for (std::size_t k = 0; k < taps.offsets.size(); ++k) {
    const CellCoords z{y[0] - taps.offsets[k][0], y[1] - taps.offsets[k][1]};
    if (!g.in_range(z)) continue;
    acc += f.values[g.index(z[0], z[1])] * taps.values[k];
  }
  return acc;
}

double bank_sup(const SampledFunction& f, const std::vector<LatticeTaps>& taps, const CellCoords& y) {
  double best = 0.0;
  for (const auto& t : taps) {
    if (t.values.empty()) continue;
    best = std::max(best, std::abs(convolve_at(f, t, y)));
  }
  return best;
}

// For each row offset dy in [-R, R], the largest dx >= 0 with
// (dx^2 + dy^2) h^2 < radius^2, or -1 when the row misses the disk.
std::vector<int> disk_rows(const Grid& g, double radius) {
  const double h2 = g.spacing() * g.spacing();
  const double r2 = radius * radius;
  const int cap = g.points_per_axis();
  int reach = std::min(cap, static_cast<int>(std::floor(radius / g.spacing())) + 1);
  auto inside = [&](long dx, long dy) { return static_cast<double>(dx * dx + dy * dy) * h2 < r2; };
  while (reach > 0 && !inside(reach, 0)) --reach;
  if (!inside(0, 0)) return {};
  if (g.dim() == 1) return {reach};
  std::vector<int> rows(2 * reach + 1, -1);
  for (int dy = -reach; dy <= reach; ++dy) {
    int w = reach;
    while (w >= 0 && !inside(w, dy)) --w;
    rows[dy + reach] = w;
  }
  return rows;
}

std::vector<std::vector<double>> squares(const AlphaField& field) {
  std::vector<std::vector<double>> sq = field.values;
  for (auto& row : sq)
    for (double& v : row) v *= v;
  return sq;
}

std::vector<double> cone_energy_sq(const AlphaField& field, const std::vector<std::vector<double>>& sq,
                                   double aperture) {
  const Grid& g = field.grid;
  const int n = g.points_per_axis();
  const double vol = g.cell_volume();
  std::vector<std::vector<int>> rows(field.scales.size());
  std::vector<double> weight(field.scales.size());
  for (std::size_t k = 0; k < field.scales.size(); ++k) {
    const double t = field.scales[k];
    rows[k] = disk_rows(g, aperture * t);
    weight[k] = field.log_step * vol / (g.dim() == 1 ? t : t * t);
  }
  std::vector<double> out(g.size(), 0.0);
  parallel_for(g.size(), [&](std::size_t idx) {
    const CellCoords x = g.coords(idx);
    double total = 0.0;
    for (std::size_t k = 0; k < field.scales.size(); ++k) {
      const auto& r = rows[k];
      if (r.empty()) continue;
      const auto& a = sq[k];
      double inner = 0.0;
      if (g.dim() == 1) {
        const int lo = std::max(0, x[0] - r[0]), hi = std::min(n - 1, x[0] + r[0]);
        for (int i = lo; i <= hi; ++i) inner += a[i];
      } else {
        const int reach = static_cast<int>(r.size() / 2);
        for (int dy = -reach; dy <= reach; ++dy) {
          const int w = r[dy + reach];
          const int yy = x[1] + dy;
          if (w < 0 || yy < 0 || yy >= n) continue;
          const int lo = std::max(0, x[0] - w), hi = std::min(n - 1, x[0] + w);
          const std::size_t base = static_cast<std::size_t>(yy) * n;
          for (int i = lo; i <= hi; ++i) inner += a[base + i];
        }
      }
      total += weight[k] * inner;
    }
    out[idx] = total;
  });
  return out;
}

SampledFunction sqrt_field(const Grid& g, std::vector<double> energy) {
  for (double& v : energy) v = std::sqrt(v);
  return SampledFunction{g, std::move(energy)};
}

}  // namespace

ConeSpec ConeSpec::defaults(const Grid& grid) {
  ConeSpec c;
  c.t_min = 2.0 * grid.spacing();
  c.t_max = 0.5 * grid.half_width();
  c.scales_per_octave = 4;
  return c;
}

void ConeSpec::validate() const {
  if (!(aperture >= 1.0)) throw Error("cone aperture must be >= 1");
  if (!(t_min > 0.0) || !(t_min < t_max)) throw Error("cone scale range needs 0 < t_min < t_max");
  if (scales_per_octave < 2) throw Error("cone needs at least 2 scales per octave");
}

std::vector<double> ConeSpec::ladder() const {
  validate();
  std::vector<double> out;
  for (int k = 0;; ++k) {
    const double t = t_min * std::exp2(static_cast<double>(k) / scales_per_octave);
    if (t > t_max * (1.0 + kLadderSlack)) break;
    out.push_back(t);
  }
  return out;
}

double ConeSpec::log_step() const { return std::numbers::ln2 / scales_per_octave; }

bool ConeSpec::in_range(double t) const {
  return t >= t_min * (1.0 - kLadderSlack) && t <= t_max * (1.0 + kLadderSlack);
}

double GStarSpec::threshold(int dim, double alpha) { return (3.0 * dim + 2.0 * alpha) / dim; }

int covering_shells(const Grid& grid, const ConeSpec& cone) {
  const double diameter = 2.0 * grid.half_width() * std::sqrt(static_cast<double>(grid.dim()));
  int j = 1;
  while (std::ldexp(cone.t_min, j) < diameter) ++j;
  return j;
}

AlphaField compute_alpha_field(const SampledFunction& f, const KernelBank& bank, const ConeSpec& cone) {
  if (bank.members.empty()) throw Error("kernel bank is empty");
  if (!bank.members.empty() && bank.members.front().dim() != f.grid.dim())
    throw Error("kernel bank dimension does not match the grid");
  AlphaField field;
  field.grid = f.grid;
  field.log_step = cone.log_step();
  field.scales = cone.ladder();
  const Grid& g = f.grid;
  const SupportIndex support(f);
  field.values.resize(field.scales.size());
  for (std::size_t k = 0; k < field.scales.size(); ++k) {
    const double t = field.scales[k];
    std::vector<LatticeTaps> taps;
    taps.reserve(bank.members.size());
    for (const auto& m : bank.members) taps.push_back(lattice_taps(m, t, g));
    const int reach = static_cast<int>(std::floor(t / g.spacing()));
    auto& row = field.values[k];
    row.assign(g.size(), 0.0);
    parallel_for(g.size(), [&](std::size_t idx) {
      const CellCoords y = g.coords(idx);
      if (!support.any_near(y, reach)) return;
      row[idx] = bank_sup(f, taps, y);
    });
  }
  return field;
}

double a_alpha_at(const SampledFunction& f, const KernelBank& bank, std::size_t cell, double t,
                  const ConeSpec& cone) {
  if (!cone.in_range(t)) throw Error("scale t lies outside the cone's ladder range");
  if (cell >= f.grid.size()) throw Error("cell index out of range");
  std::vector<LatticeTaps> taps;
  for (const auto& m : bank.members) taps.push_back(lattice_taps(m, t, f.grid));
  return bank_sup(f, taps, f.grid.coords(cell));
}

std::vector<double> cone_energy(const AlphaField& field, double aperture) {
  if (!(aperture >= 1.0)) throw Error("cone aperture must be >= 1");
  return cone_energy_sq(field, squares(field), aperture);
}

double lattice_cone_energy(const AlphaField& field, double aperture, const Generator& weight) {
  if (!(aperture > 0.0)) throw Error("cone aperture must be positive");
  const Grid& g = field.grid;
  const int n = g.points_per_axis();
  const int dim = g.dim();
  const double h = g.spacing();
  const double vol = g.cell_volume();
  double t_top = 0.0;
  for (double t : field.scales) t_top = std::max(t_top, t);
  const int pad = static_cast<int>(std::ceil(aperture * t_top / h)) + 1;
  const int side = n + 2 * pad;

  // Weight on the padded lattice, then prefix sums along axis 0 so a disk
  // row costs one subtraction.
  const std::size_t rows_total = dim == 1 ? 1 : static_cast<std::size_t>(side);
  std::vector<double> prefix(rows_total * (side + 1), 0.0);
  parallel_for(rows_total, [&](std::size_t row) {
    const double yc = dim == 1 ? 0.0 : -g.half_width() + (static_cast<double>(row) - pad + 0.5) * h;
    double* out = &prefix[row * (side + 1)];
    for (int i = 0; i < side; ++i) {
      const double xc = -g.half_width() + (i - pad + 0.5) * h;
      out[i + 1] = out[i] + weight(Point{xc, yc});
    }
  });

  double total = 0.0;
  for (std::size_t k = 0; k < field.scales.size(); ++k) {
    const double t = field.scales[k];
    const double r2 = aperture * t * aperture * t;
    const int reach = static_cast<int>(std::floor(aperture * t / h)) + 1;
    std::vector<int> half(2 * reach + 1, -1);
    const int ylo = dim == 2 ? -reach : 0, yhi = dim == 2 ? reach : 0;
    for (int dy = ylo; dy <= yhi; ++dy) {
      int w = reach;
      while (w >= 0 && static_cast<double>(w * w + dy * dy) * h * h >= r2) --w;
      half[dy + reach] = w;
    }
    const auto& a = field.values[k];
    std::vector<double> part(g.size(), 0.0);
    parallel_for(g.size(), [&](std::size_t yi) {
      if (a[yi] == 0.0) return;
      const CellCoords y = g.coords(yi);
      double mass = 0.0;
      for (int dy = ylo; dy <= yhi; ++dy) {
        const int w = half[dy + reach];
        if (w < 0) continue;
        const std::size_t row = dim == 1 ? 0 : static_cast<std::size_t>(y[1] + dy + pad);
        const double* pre = &prefix[row * (side + 1)];
        mass += pre[y[0] + pad + w + 1] - pre[y[0] + pad - w];
      }
      part[yi] = a[yi] * a[yi] * mass;
    });
    double inner = 0.0;
    for (double v : part) inner += v;
    total += field.log_step * vol / (dim == 1 ? t : t * t) * inner * vol;
  }
  return total;
}

SampledFunction s_alpha_field(const AlphaField& field, double aperture) {
  return sqrt_field(field.grid, cone_energy(field, aperture));
}

SampledFunction s_alpha_field(const SampledFunction& f, const KernelBank& bank, const ConeSpec& cone) {
  cone.validate();
  return s_alpha_field(compute_alpha_field(f, bank, cone), cone.aperture);
}

SampledFunction g_alpha_field(const AlphaField& field) {
  const Grid& g = field.grid;
  std::vector<double> out(g.size(), 0.0);
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    double total = 0.0;
    for (std::size_t k = 0; k < field.scales.size(); ++k) {
      const double a = field.values[k][idx];
      total += field.log_step * (a * a);
    }
    out[idx] = total;
  }
  return sqrt_field(g, std::move(out));
}

SampledFunction g_alpha_field(const SampledFunction& f, const KernelBank& bank, const ConeSpec& cone) {
  return g_alpha_field(compute_alpha_field(f, bank, cone));
}

SampledFunction g_star_field(const AlphaField& field, double lambda) {
  require_lambda(lambda);
  const Grid& g = field.grid;
  const int n = g.points_per_axis();
  const int span = 2 * n - 1;
  const double h = g.spacing();
  const double vol = g.cell_volume();
  const double expo = lambda * g.dim();
  const auto sq = squares(field);

  // Damping (t / (t + |x - y|))^{lambda n} tabulated by cell offset.
  std::vector<std::vector<double>> damp(field.scales.size());
  std::vector<double> weight(field.scales.size());
  for (std::size_t k = 0; k < field.scales.size(); ++k) {
    const double t = field.scales[k];
    weight[k] = field.log_step * vol / (g.dim() == 1 ? t : t * t);
    auto& tab = damp[k];
    tab.resize(g.dim() == 1 ? span : static_cast<std::size_t>(span) * span);
    const int ylo = g.dim() == 2 ? -(n - 1) : 0, yhi = g.dim() == 2 ? n - 1 : 0;
    for (int dy = ylo; dy <= yhi; ++dy)
      for (int dx = -(n - 1); dx <= n - 1; ++dx) {
        const double d = h * std::sqrt(static_cast<double>(dx) * dx + static_cast<double>(dy) * dy);
        tab[static_cast<std::size_t>(dy - ylo) * span + (dx + n - 1)] = std::pow(t / (t + d), expo);
      }
  }

  std::vector<double> out(g.size(), 0.0);
  parallel_for(g.size(), [&](std::size_t idx) {
    const CellCoords x = g.coords(idx);
    const int ylo = g.dim() == 2 ? -(n - 1) : 0;
    double total = 0.0;
    for (std::size_t k = 0; k < field.scales.size(); ++k) {
      const auto& a = sq[k];
      const auto& tab = damp[k];
      double inner = 0.0;
      for (std::size_t yi = 0; yi < g.size(); ++yi) {
        if (a[yi] == 0.0) continue;
        const CellCoords y = g.coords(yi);
        const int dx = y[0] - x[0], dy = y[1] - x[1];
        inner += tab[static_cast<std::size_t>(dy - ylo) * span + (dx + n - 1)] * a[yi];
      }
      total += weight[k] * inner;
    }
    out[idx] = total;
  });
  return sqrt_field(g, std::move(out));
}

SampledFunction g_star_field(const SampledFunction& f, const KernelBank& bank, const GStarSpec& spec) {
  return g_star_field(compute_alpha_field(f, bank, spec.cone), spec.lambda);
}

SampledFunction g_star_shell_bound(const AlphaField& field, double lambda, int shells) {
  require_lambda(lambda);
  if (shells < 1) throw Error("shell count J must be >= 1");
  const Grid& g = field.grid;
  const double ln = lambda * g.dim();
  const auto sq = squares(field);
  std::vector<double> total = cone_energy_sq(field, sq, 1.0);
  for (int j = 1; j <= shells; ++j) {
    const auto shell = cone_energy_sq(field, sq, std::ldexp(1.0, j));
    const double damping = std::exp2(-j * ln);
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += damping * shell[i];
  }
  const double front = std::exp2(ln);
  for (double& v : total) v *= front;
  return sqrt_field(g, std::move(total));
}

SampledFunction g_star_shell_bound(const SampledFunction& f, const KernelBank& bank, const GStarSpec& spec) {
  return g_star_shell_bound(compute_alpha_field(f, bank, spec.cone), spec.lambda, spec.shells);
}

}  // namespace morreylab
