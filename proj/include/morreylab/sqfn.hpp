#pragma once

#include <vector>

#include "morreylab/grid.hpp"
#include "morreylab/kernel_bank.hpp"

namespace morreylab {

/// Discretized cone Gamma_beta(x) = {(y,t) : |x - y| < beta t} with the
/// geometric scale ladder t_k = t_min 2^{k/m}, k = 0..K, t_K <= t_max.
struct ConeSpec {
  double aperture = 1.0;
  double t_min = 0.0;
  double t_max = 0.0;
  int scales_per_octave = 4;

  /// t_min = 2h, t_max = L/2, m = 4.
  static ConeSpec defaults(const Grid& grid);

  void validate() const;
  std::vector<double> ladder() const;
  /// Quadrature weight of dt/t per ladder node: ln 2 / m.
  double log_step() const;
  bool in_range(double t) const;
};

struct GStarSpec {
  double lambda = 6.0;
  int shells = 1;
  ConeSpec cone;

  /// The g* weak-type estimate is proved for lambda above (3n + 2 alpha)/n.
  static double threshold(int dim, double alpha);
  bool above_threshold(int dim, double alpha) const { return lambda > threshold(dim, alpha); }
};

/// Smallest J with 2^J t_min >= box diameter, so the shells cover every y.
int covering_shells(const Grid& grid, const ConeSpec& cone);

/// A_alpha(f)(y, t_k) for every cell y and ladder scale t_k, computed once and
/// shared by S, g and g*.
struct AlphaField {
  Grid grid;
  double log_step = 0.0;
  std::vector<double> scales;
  std::vector<std::vector<double>> values;  // [scale][cell]
};

AlphaField compute_alpha_field(const SampledFunction& f, const KernelBank& bank, const ConeSpec& cone);

/// Bank supremum of |f * phi_t(y)| at one cell center.
double a_alpha_at(const SampledFunction& f, const KernelBank& bank, std::size_t cell, double t,
                  const ConeSpec& cone);

/// sum_k (ln2/m) (h^n / t_k^n) sum_{|x-y| < beta t_k} A(y,t_k)^2, before the square root.
std::vector<double> cone_energy(const AlphaField& field, double aperture);

/// sum over every x of the lattice extending the grid (past the box) of
/// w(x) S_beta(x)^2 h^n. A vanishes off the box but wide cones reach far out,
/// so this is the R^n weighted L^2 energy of S_beta rather than its box part.
double lattice_cone_energy(const AlphaField& field, double aperture, const Generator& weight);

SampledFunction s_alpha_field(const AlphaField& field, double aperture);
SampledFunction s_alpha_field(const SampledFunction& f, const KernelBank& bank, const ConeSpec& cone);

SampledFunction g_alpha_field(const AlphaField& field);
SampledFunction g_alpha_field(const SampledFunction& f, const KernelBank& bank, const ConeSpec& cone);

SampledFunction g_star_field(const AlphaField& field, double lambda);
SampledFunction g_star_field(const SampledFunction& f, const KernelBank& bank, const GStarSpec& spec);

/// ( 2^{lambda n} [ S^2 + sum_{j=1}^J 2^{-j lambda n} S_{2^j}^2 ] )^{1/2}.
SampledFunction g_star_shell_bound(const AlphaField& field, double lambda, int shells);
SampledFunction g_star_shell_bound(const SampledFunction& f, const KernelBank& bank, const GStarSpec& spec);

}  // namespace morreylab
