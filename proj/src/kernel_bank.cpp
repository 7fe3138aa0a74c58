#include "morreylab/kernel_bank.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "morreylab/rng.hpp"

namespace morreylab {

namespace {

double power_n(double r, int n) { return n == 1 ? r : r * r; }

double norm(const Point& x, int dim) { return dim == 1 ? std::abs(x[0]) : std::hypot(x[0], x[1]); }

// 2^{alpha - 1}: a Lipschitz bound at most this certifies seminorm_alpha <= 1
// on a support of diameter 2.
double holder_cap(double alpha) { return std::pow(2.0, alpha - 1.0); }

// Lattice offsets d (in cells) with |d h| <= t.
std::vector<CellCoords> lattice_ball(double t, double h, int dim) {
  const int reach = static_cast<int>(std::floor(t / h));
  std::vector<CellCoords> out;
  const double t2 = t * t;
  const int ylo = dim == 2 ? -reach : 0;
  const int yhi = dim == 2 ? reach : 0;
  for (int j = ylo; j <= yhi; ++j)
    for (int i = -reach; i <= reach; ++i) {
      const double x = i * h, y = j * h;
      if (x * x + y * y <= t2) out.push_back({i, j});
    }
  return out;
}

}  // namespace

double bump_profile(double s) {
  if (s >= 1.0) return 0.0;
  const double u = 1.0 - s * s;
  return u * u * u;
}

double bump_profile_lipschitz() {
  // |b'(s)| = 6 s (1 - s^2)^2, maximal at s = 1/sqrt(5).
  const double s = 1.0 / std::sqrt(5.0);
  const double u = 1.0 - s * s;
  return 6.0 * s * u * u;
}

Kernel::Kernel(int dim, double alpha, Bump first, Bump second, double c1, double c2)
    : dim_(dim), alpha_(alpha), first_(first), second_(second), c1_(c1), c2_(c2) {}

double Kernel::bump_value(const Bump& b, const Point& x) const {
  const Point d{x[0] - b.center[0], x[1] - b.center[1]};
  return bump_profile(norm(d, dim_) / b.radius) / power_n(b.radius, dim_);
}

double Kernel::operator()(const Point& x) const {
  return c1_ * bump_value(first_, x) - c2_ * bump_value(second_, x);
}

double Kernel::evaluate_dilated(double t, const Point& x) const {
  if (!(t > 0.0)) throw Error("dilation scale must be positive");
  return (*this)(Point{x[0] / t, x[1] / t}) / power_n(t, dim_);
}

double Kernel::lipschitz_bound() const {
  const double lb = bump_profile_lipschitz();
  return lb * (std::abs(c1_) / power_n(first_.radius, dim_) / first_.radius +
               std::abs(c2_) / power_n(second_.radius, dim_) / second_.radius);
}

Kernel Kernel::scaled(double c) const { return Kernel(dim_, alpha_, first_, second_, c * c1_, c * c2_); }

Kernel Kernel::shifted(const Point& offset) const {
  Bump a = first_, b = second_;
  for (int i = 0; i < 2; ++i) {
    a.center[i] += offset[i];
    b.center[i] += offset[i];
  }
  return Kernel(dim_, alpha_, a, b, c1_, c2_);
}

std::optional<Kernel> Kernel::lattice_member(double t, double h) const {
  double s1 = 0.0, s2 = 0.0;
  for (const auto& d : lattice_ball(t, h, dim_)) {
    const Point x{d[0] * h / t, d[1] * h / t};
    s1 += bump_value(first_, x);
    s2 += bump_value(second_, x);
  }
  if (!(s1 > 0.0) || !(s2 > 0.0)) return std::nullopt;
  Kernel out(dim_, alpha_, first_, second_, c1_, c1_ * s1 / s2);
  const double lip = out.lipschitz_bound();
  const double cap = holder_cap(alpha_);
  if (lip > cap) out = out.scaled(cap / lip);
  return out;
}

KernelBank build_bank(double alpha, std::size_t size, std::uint64_t seed, const Grid& reference) {
  if (!(alpha > 0.0) || alpha > 1.0) throw Error("bank alpha must lie in (0, 1]");
  if (size == 0) throw Error("bank size must be at least 1");
  if (reference.half_width() < 1.0 || reference.spacing() > 0.125)
    throw Error("reference grid must cover the unit ball with spacing <= 1/8");
  const int n = reference.dim();
  Rng rng(seed);
  KernelBank bank{alpha, seed, {}};
  auto draw_bump = [&] {
    Bump b;
    b.radius = rng.uniform(0.25, 0.75);
    const double reach = 1.0 - b.radius;
    if (n == 1) {
      b.center = {rng.uniform(-reach, reach), 0.0};
    } else {
      const double rho = reach * std::sqrt(rng.uniform());
      const double theta = 2.0 * std::numbers::pi * rng.uniform();
      b.center = {rho * std::cos(theta), rho * std::sin(theta)};
    }
    return b;
  };
  while (bank.members.size() < size) {
    const Bump first = draw_bump();
    const Bump second = draw_bump();
    Kernel unit(n, alpha, first, second, 1.0, 0.0);
    Kernel other(n, alpha, second, first, 1.0, 0.0);
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < reference.size(); ++i) {
      s1 += unit(reference.center(i));
      s2 += other(reference.center(i));
    }
    Kernel k(n, alpha, first, second, 1.0, s1 / s2);
    k = k.scaled(holder_cap(alpha) / k.lipschitz_bound());
    bank.members.push_back(k);
  }
  return bank;
}

AdmissibilityReport admissibility_report(const Kernel& k, const Grid& grid) {
  AdmissibilityReport rep;
  const int n = k.dim();
  if (n != grid.dim()) throw Error("kernel and grid dimensions differ");

  double excess = std::max(norm(k.first().center, n) + k.first().radius,
                           norm(k.second().center, n) + k.second().radius) - 1.0;
  double mean = 0.0;
  std::vector<Point> pts;
  std::vector<double> vals;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Point x = grid.center(i);
    const double v = k(x);
    mean += v;
    const double r = norm(x, n);
    if (v != 0.0) excess = std::max(excess, r - 1.0);
    if (r <= 1.0 + 2.0 * grid.spacing()) {
      pts.push_back(x);
      vals.push_back(v);
    }
  }
  rep.support_excess = excess;
  rep.support_ok = excess <= 1e-12;
  rep.discrete_mean = mean * grid.cell_volume();
  rep.mean_ok = std::abs(rep.discrete_mean) <= 1e-12;

  const double alpha = k.alpha();
  double quotient = 0.0;
  auto pair = [&](const Point& a, double va, const Point& b, double vb) {
    const double d = std::sqrt(grid.distance2(a, b));
    if (d > 0.0) quotient = std::max(quotient, std::abs(va - vb) / std::pow(d, alpha));
  };
  if (pts.size() <= 1500) {
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) pair(pts[i], vals[i], pts[j], vals[j]);
  } else {
    Rng rng(0x5eed);
    for (int s = 0; s < 300000; ++s) {
      const std::size_t i = rng.below(pts.size()), j = rng.below(pts.size());
      pair(pts[i], vals[i], pts[j], vals[j]);
    }
  }
  // Short-range pairs resolve the local slope.
  const double delta = grid.spacing() / 8.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (int axis = 0; axis < n; ++axis) {
      Point q = pts[i];
      q[axis] += delta;
      pair(pts[i], vals[i], q, k(q));
    }
  rep.holder_quotient = quotient;
  rep.holder_ok = quotient <= 1.0;
  return rep;
}

LatticeTaps lattice_taps(const Kernel& k, double t, const Grid& grid) {
  LatticeTaps taps;
  const double h = grid.spacing();
  const auto member = k.lattice_member(t, h);
  if (!member) return taps;
  const double vol = grid.cell_volume();
  for (const auto& d : lattice_ball(t, h, grid.dim())) {
    const double v = member->evaluate_dilated(t, Point{d[0] * h, d[1] * h}) * vol;
    if (v != 0.0) {
      taps.offsets.push_back(d);
      taps.values.push_back(v);
    }
  }
  return taps;
}

}  // namespace morreylab
