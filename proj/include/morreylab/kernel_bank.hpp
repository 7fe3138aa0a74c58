#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "morreylab/grid.hpp"

namespace morreylab {

/// Bump profile b(s) = (1 - s^2)^3 on [0, 1], zero beyond.
double bump_profile(double s);
/// sup |b'| on [0, 1], attained at s = 1/sqrt(5).
double bump_profile_lipschitz();

struct Bump {
  Point center{};
  double radius = 0.5;
};

/// x -> c1 b(|x-u1|/r1)/r1^n - c2 b(|x-u2|/r2)/r2^n, a candidate member of
/// the Hoelder-alpha kernel class (support in the unit ball, mean zero,
/// alpha-seminorm at most one).
class Kernel {
 public:
  Kernel() = default;
  Kernel(int dim, double alpha, Bump first, Bump second, double c1, double c2);

  int dim() const { return dim_; }
  double alpha() const { return alpha_; }
  const Bump& first() const { return first_; }
  const Bump& second() const { return second_; }
  double c1() const { return c1_; }
  double c2() const { return c2_; }

  double operator()(const Point& x) const;
  /// t^{-n} k(x / t), straight from the closed form.
  double evaluate_dilated(double t, const Point& x) const;

  /// Analytic Lipschitz bound of the closed form.
  double lipschitz_bound() const;

  Kernel scaled(double c) const;
  Kernel shifted(const Point& offset) const;

  /// Member adapted to the lattice h Z^n at scale t: c2 re-fit so the
  /// samples of phi_t at lattice offsets sum to zero, then both coefficients
  /// shrunk if needed to keep the Hoelder certificate. Empty when either bump
  /// misses every lattice point at this scale.
  std::optional<Kernel> lattice_member(double t, double h) const;

 private:
  double bump_value(const Bump& b, const Point& x) const;

  int dim_ = 1;
  double alpha_ = 1.0;
  Bump first_{};
  Bump second_{};
  double c1_ = 0.0;
  double c2_ = 0.0;
};

struct KernelBank {
  double alpha = 1.0;
  std::uint64_t seed = 0;
  std::vector<Kernel> members;

  std::size_t size() const { return members.size(); }
};

/// Members are drawn sequentially from one stream, so a larger bank with the
/// same seed extends a smaller one.
KernelBank build_bank(double alpha, std::size_t size, std::uint64_t seed, const Grid& reference);

struct AdmissibilityReport {
  bool support_ok = false;
  bool mean_ok = false;
  bool holder_ok = false;
  double support_excess = 0.0;  // largest |x| - 1 over nonzero samples (<= 0 passes)
  double discrete_mean = 0.0;   // midpoint-rule integral over the grid
  double holder_quotient = 0.0; // max sampled |k(x)-k(x')| / |x-x'|^alpha

  bool all() const { return support_ok && mean_ok && holder_ok; }
};

AdmissibilityReport admissibility_report(const Kernel& k, const Grid& grid);

/// Discrete convolution taps of phi_t on the lattice: conv(y) = sum_d f(y - d) tap(d).
struct LatticeTaps {
  std::vector<CellCoords> offsets;
  std::vector<double> values;  // phi_t(d h) h^n
};

LatticeTaps lattice_taps(const Kernel& k, double t, const Grid& grid);

}  // namespace morreylab
