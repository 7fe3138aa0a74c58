#pragma once

#include <string>
#include <vector>

#include "morreylab/grid.hpp"

namespace morreylab {

struct BadPart {
  DyadicCube cube;
  Point center{};
  double side = 0.0;
  // b_i on the cube's cells, in cells_in(grid, cube) order; zero elsewhere.
  std::vector<double> values;
};

struct CZDecomposition {
  double sigma = 0.0;
  DyadicCube root;
  std::vector<DyadicCube> cubes;  // canonical (level, anchor) order
  SampledFunction good;
  std::vector<BadPart> bad_parts;
  // g on Q_i is the signed average of f, which makes every b_i exactly mean zero.
  std::string good_convention = "signed-average";

  SampledFunction bad_total() const;
};

CZDecomposition cz_decompose(const SampledFunction& f, double sigma, const DyadicCube& root);

struct CZReport {
  bool stopping_bounds = true;   // sigma < avg_Q |f| <= 2^n sigma on every cube
  bool stopping_time = true;     // the parent of every selected cube has avg <= sigma
  bool good_bounded = true;      // |g| <= 2^n sigma on the root
  bool reconstruction = true;    // f = g + sum b_i cellwise
  bool mean_zero = true;         // |int b_i| <= 1e-12 ||f||_1
  bool disjoint = true;
  bool bad_l1 = true;            // ||b_i||_1 <= 2 int_{Q_i} |f|
  double max_reconstruction_error = 0.0;
  double max_bad_integral = 0.0;
  double max_cube_average = 0.0;
  double total_cube_measure = 0.0;
  std::vector<std::string> failures;

  bool all() const {
    return stopping_bounds && stopping_time && good_bounded && reconstruction && mean_zero && disjoint && bad_l1;
  }
};

CZReport cz_verify(const CZDecomposition& d, const SampledFunction& f, double sigma);

}  // namespace morreylab
