#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "morreylab/grid.hpp"

namespace morreylab {

struct Weight {
  SampledFunction data;
  std::string family_tag;
  // Set for |x|^a weights; drives the divergence flags.
  std::optional<double> power_exponent;

  static Weight from_samples(SampledFunction samples, std::string tag = "samples");
  Weight scaled(double c) const;
  const Grid& grid() const { return data.grid; }
};

Weight build_power_weight(double exponent, const Grid& grid);

/// Closed-form class membership of |x|^a in R^n.
bool power_weight_in_ap(double exponent, int dim, double p);
bool power_weight_in_rh(double exponent, int dim, double r);

/// Finite surrogate for "every ball": centers on a sub-lattice of cell
/// centers, dyadic radii h 2^k. Balls containing no cell are dropped.
class BallFamily {
 public:
  static BallFamily lattice(const Grid& grid, int stride = 0, int k_min = 0, int k_max = -1);
  static BallFamily centered(const Grid& grid, const Point& center, const std::vector<double>& radii);
  static BallFamily from_balls(const Grid& grid, const std::vector<Ball>& balls);

  BallFamily merged(const BallFamily& other) const;

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return balls_.size(); }
  bool empty() const { return balls_.empty(); }
  const Ball& ball(std::size_t i) const { return balls_[i]; }
  const std::vector<std::size_t>& cells(std::size_t i) const { return cells_[i]; }
  const std::vector<Ball>& balls() const { return balls_; }

  int stride() const { return stride_; }
  int k_min() const { return k_min_; }
  int k_max() const { return k_max_; }

 private:
  void add(const Ball& ball);

  Grid grid_;
  std::vector<Ball> balls_;
  std::vector<std::vector<std::size_t>> cells_;
  int stride_ = 0;
  int k_min_ = 0;
  int k_max_ = -1;
};

int default_stride(const Grid& grid);
int default_k_max(const Grid& grid);

double muckenhoupt_characteristic(const Weight& w, double p, const BallFamily& balls);
double reverse_holder_constant(const Weight& w, double r, const BallFamily& balls);

/// max over family balls containing x of avg_B(w); 0 where no ball covers x.
SampledFunction hl_maximal(const Weight& w, const BallFamily& balls);

/// Ratio of int_{|x| >= R} w / |x|^{nq} to R^{-nq} w(Q(0, 2R)) on the box.
double tail_ratio(const Weight& w, double q, double radius);

struct WeightReport {
  double p = 1.0;
  double ap_characteristic = 1.0;
  bool ap_divergent = false;
  double rh_exponent = 2.0;
  double rh_constant = 1.0;
  bool rh_divergent = false;
  double doubling_constant = 1.0;
  double subset_constant = 0.0;
  double q = 2.0;
  double tail_ratio = 0.0;
  int skipped_geometries = 0;
};

WeightReport weight_lemma_report(const Weight& w, double p, double r, double q,
                                 const BallFamily& balls, std::uint64_t seed = 1);

}  // namespace morreylab
