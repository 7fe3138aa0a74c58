#include "morreylab/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "morreylab/parallel.hpp"
#include "morreylab/rng.hpp"

namespace morreylab {

namespace {

double norm_of(const Grid& g, const Point& x) { return std::sqrt(g.distance2(x, Point{0.0, 0.0})); }

double sum_over(const std::vector<double>& v, const std::vector<std::size_t>& cells) {
  double s = 0.0;
  for (std::size_t i : cells) s += v[i];
  return s;
}

void require_family(const BallFamily& balls) {
  if (balls.empty()) throw Error("ball family is empty");
}

// Max over balls of a per-ball quantity, reduced in ball order.
template <class F>
double max_over_balls(const BallFamily& balls, F&& per_ball) {
  std::vector<double> vals(balls.size());
  parallel_for(balls.size(), [&](std::size_t b) { vals[b] = per_ball(b); });
  double best = -std::numeric_limits<double>::infinity();
  for (double v : vals) best = std::max(best, v);
  return best;
}

}  // namespace

Weight Weight::from_samples(SampledFunction samples, std::string tag) {
  for (double v : samples.values)
    if (!(v > 0.0) || !std::isfinite(v)) throw Error("weight values must be positive and finite");
  return Weight{std::move(samples), std::move(tag), std::nullopt};
}

Weight Weight::scaled(double c) const {
  if (!(c > 0.0)) throw Error("weight scale must be positive");
  Weight out = *this;
  for (double& v : out.data.values) v *= c;
  out.family_tag = family_tag + "*" + std::to_string(c);
  return out;
}

Weight build_power_weight(double exponent, const Grid& grid) {
  if (!(exponent > -grid.dim()))
    throw Error("power weight |x|^" + std::to_string(exponent) + " is not locally integrable");
  auto samples = sample_on_grid(
      [&](const Point& x) { return std::pow(norm_of(grid, x), exponent); }, grid);
  Weight w = Weight::from_samples(std::move(samples), "power a=" + std::to_string(exponent));
  w.power_exponent = exponent;
  return w;
}

bool power_weight_in_ap(double a, int dim, double p) {
  if (!(a > -dim)) return false;
  if (p == 1.0) return a <= 0.0;
  return a < dim * (p - 1.0);
}

bool power_weight_in_rh(double a, int dim, double r) { return a * r > -dim; }

int default_stride(const Grid& grid) { return std::max(1, grid.points_per_axis() / 16); }

int default_k_max(const Grid& grid) {
  // Largest k with h 2^k <= L/2.
  int k = 0;
  while (grid.spacing() * std::ldexp(1.0, k + 1) <= 0.5 * grid.half_width() * (1.0 + 1e-12)) ++k;
  return k;
}

void BallFamily::add(const Ball& ball) {
  auto cells = cells_in(grid_, ball);
  if (cells.empty()) return;
  balls_.push_back(ball);
  cells_.push_back(std::move(cells));
}

BallFamily BallFamily::lattice(const Grid& grid, int stride, int k_min, int k_max) {
  BallFamily fam;
  fam.grid_ = grid;
  fam.stride_ = stride > 0 ? stride : default_stride(grid);
  fam.k_min_ = k_min;
  fam.k_max_ = k_max >= 0 ? k_max : default_k_max(grid);
  if (fam.k_min_ < 0 || fam.k_min_ > fam.k_max_) throw Error("invalid ball radius range");
  const int n = grid.points_per_axis();
  const int s = fam.stride_;
  std::vector<int> axis;
  for (int i = s / 2; i < n; i += s) axis.push_back(i);
  const std::size_t ny = grid.dim() == 2 ? axis.size() : 1;
  for (std::size_t j = 0; j < ny; ++j)
    for (int i : axis)
      for (int k = fam.k_min_; k <= fam.k_max_; ++k) {
        const std::size_t idx = grid.index(i, grid.dim() == 2 ? axis[j] : 0);
        fam.add(Ball{grid.center(idx), grid.spacing() * std::ldexp(1.0, k)});
      }
  return fam;
}

BallFamily BallFamily::centered(const Grid& grid, const Point& center, const std::vector<double>& radii) {
  BallFamily fam;
  fam.grid_ = grid;
  for (double r : radii) {
    if (!(r > 0.0)) throw Error("ball radius must be positive");
    fam.add(Ball{center, r});
  }
  return fam;
}

BallFamily BallFamily::from_balls(const Grid& grid, const std::vector<Ball>& balls) {
  BallFamily fam;
  fam.grid_ = grid;
  for (const auto& b : balls) {
    if (!(b.radius > 0.0)) throw Error("ball radius must be positive");
    fam.add(b);
  }
  return fam;
}

BallFamily BallFamily::merged(const BallFamily& other) const {
  if (!(other.grid_ == grid_)) throw Error("cannot merge ball families on different grids");
  BallFamily out = *this;
  for (std::size_t i = 0; i < other.size(); ++i) {
    out.balls_.push_back(other.balls_[i]);
    out.cells_.push_back(other.cells_[i]);
  }
  return out;
}

double muckenhoupt_characteristic(const Weight& w, double p, const BallFamily& balls) {
  if (!(p >= 1.0)) throw Error("Muckenhoupt exponent p must be >= 1");
  require_family(balls);
  const auto& v = w.data.values;
  if (p == 1.0) {
    return max_over_balls(balls, [&](std::size_t b) {
      const auto& cells = balls.cells(b);
      double lo = std::numeric_limits<double>::infinity();
      for (std::size_t i : cells) lo = std::min(lo, v[i]);
      return (sum_over(v, cells) / static_cast<double>(cells.size())) / lo;
    });
  }
  const double dual = -1.0 / (p - 1.0);
  return max_over_balls(balls, [&](std::size_t b) {
    const auto& cells = balls.cells(b);
    double s_dual = 0.0;
    for (std::size_t i : cells) s_dual += std::pow(v[i], dual);
    const double count = static_cast<double>(cells.size());
    return (sum_over(v, cells) / count) * std::pow(s_dual / count, p - 1.0);
  });
}

double reverse_holder_constant(const Weight& w, double r, const BallFamily& balls) {
  if (!(r > 1.0)) throw Error("reverse Hoelder exponent r must be > 1");
  require_family(balls);
  const auto& v = w.data.values;
  return max_over_balls(balls, [&](std::size_t b) {
    const auto& cells = balls.cells(b);
    double s_r = 0.0;
    for (std::size_t i : cells) s_r += std::pow(v[i], r);
    const double count = static_cast<double>(cells.size());
    return std::pow(s_r / count, 1.0 / r) / (sum_over(v, cells) / count);
  });
}

SampledFunction hl_maximal(const Weight& w, const BallFamily& balls) {
  require_family(balls);
  const auto& v = w.data.values;
  std::vector<double> avg(balls.size());
  parallel_for(balls.size(), [&](std::size_t b) {
    avg[b] = sum_over(v, balls.cells(b)) / static_cast<double>(balls.cells(b).size());
  });
  auto out = SampledFunction::zeros(w.grid());
  for (std::size_t b = 0; b < balls.size(); ++b)
    for (std::size_t i : balls.cells(b)) out.values[i] = std::max(out.values[i], avg[b]);
  return out;
}

double tail_ratio(const Weight& w, double q, double radius) {
  if (!(q > 1.0)) throw Error("tail exponent q must be > 1");
  const Grid& g = w.grid();
  if (!(radius > 0.0) || radius > g.half_width()) throw Error("tail radius escapes the box");
  const double nq = g.dim() * q;
  const auto& v = w.data.values;
  double tail = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double r = norm_of(g, g.center(i));
    if (r >= radius) tail += v[i] / std::pow(r, nq);
  }
  tail *= g.cell_volume();
  const double R = radius;
  const Box cube{{-R, g.dim() == 2 ? -R : 0.0}, {R, g.dim() == 2 ? R : 1.0}};
  double wq = 0.0;
  for (std::size_t i : cells_in(g, cube)) wq += v[i];
  wq *= g.cell_volume();
  return tail / (std::pow(R, -nq) * wq);
}

WeightReport weight_lemma_report(const Weight& w, double p, double r, double q,
                                 const BallFamily& balls, std::uint64_t seed) {
  require_family(balls);
  if (!(q > 1.0)) throw Error("tail exponent q must be > 1");
  const Grid& g = w.grid();
  const auto& v = w.data.values;
  WeightReport rep;
  rep.p = p;
  rep.rh_exponent = r;
  rep.q = q;
  rep.ap_characteristic = muckenhoupt_characteristic(w, p, balls);
  rep.rh_constant = reverse_holder_constant(w, r, balls);
  if (w.power_exponent) {
    rep.ap_divergent = !power_weight_in_ap(*w.power_exponent, g.dim(), p);
    rep.rh_divergent = !power_weight_in_rh(*w.power_exponent, g.dim(), r);
  }

  // Doubling: w(2B) / w(B) over balls whose double stays in the box.
  double doubling = 0.0;
  for (std::size_t b = 0; b < balls.size(); ++b) {
    const Ball twice{balls.ball(b).center, 2.0 * balls.ball(b).radius};
    if (!ball_inside_box(g, twice)) {
      ++rep.skipped_geometries;
      continue;
    }
    // w(B) taken as avg_B(w) |B|: cell counts of small discrete balls are
    // not in ratio 2^n, averages are.
    const auto outer = cells_in(g, twice);
    const auto& inner = balls.cells(b);
    const double avg_outer = sum_over(v, outer) / static_cast<double>(outer.size());
    const double avg_inner = sum_over(v, inner) / static_cast<double>(inner.size());
    doubling = std::max(doubling, std::ldexp(avg_outer / avg_inner, g.dim()));
  }
  rep.doubling_constant = doubling;

  // Subsets E of B: random cell subsets at fixed fractions plus inner core and outer annulus.
  const double expo = (r - 1.0) / r;
  Rng rng(seed);
  double subset = 0.0;
  auto consider = [&](const std::vector<std::size_t>& e, const std::vector<std::size_t>& cells) {
    if (e.empty()) return;
    const double frac = static_cast<double>(e.size()) / static_cast<double>(cells.size());
    subset = std::max(subset, (sum_over(v, e) / sum_over(v, cells)) / std::pow(frac, expo));
  };
  for (std::size_t b = 0; b < balls.size(); ++b) {
    const auto& cells = balls.cells(b);
    if (cells.size() < 2) continue;
    for (double fraction : {0.125, 0.25, 0.5}) {
      const auto take = static_cast<std::size_t>(fraction * static_cast<double>(cells.size()));
      if (take == 0) continue;
      std::vector<std::size_t> shuffled = cells;
      for (std::size_t i = 0; i < take; ++i) std::swap(shuffled[i], shuffled[i + rng.below(shuffled.size() - i)]);
      shuffled.resize(take);
      consider(shuffled, cells);
    }
    const Ball& ball = balls.ball(b);
    const double half2 = 0.25 * ball.radius * ball.radius;
    std::vector<std::size_t> core, annulus;
    for (std::size_t i : cells) (g.distance2(g.center(i), ball.center) < half2 ? core : annulus).push_back(i);
    consider(core, cells);
    consider(annulus, cells);
  }
  rep.subset_constant = subset;

  double tail = 0.0;
  for (int k = 1; g.spacing() * std::ldexp(1.0, k) <= 0.5 * g.half_width() * (1.0 + 1e-12); ++k)
    tail = std::max(tail, tail_ratio(w, q, g.spacing() * std::ldexp(1.0, k)));
  rep.tail_ratio = tail;
  return rep;
}

}  // namespace morreylab
