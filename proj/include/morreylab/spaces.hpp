#pragma once

#include "morreylab/grid.hpp"
#include "morreylab/weights.hpp"

namespace morreylab {

struct MorreyParams {
  double p = 1.0;
  double kappa = 0.5;

  void validate() const;
};

double lp_w_norm(const SampledFunction& f, double p, const Weight& w);

/// w({x in B : |f(x)| > level}).
double local_distribution(const SampledFunction& f, const Weight& w, const Ball& ball, double level);

/// max over the family of (w(B)^{-kappa} int_B |f|^p w)^{1/p}.
double morrey_norm(const SampledFunction& f, const MorreyParams& params, const Weight& w,
                   const BallFamily& balls);

/// max over the family of w(B)^{-kappa/p} sup_lambda lambda w({x in B : |f| > lambda})^{1/p}.
/// The inner sup is exact: it is attained as lambda rises to one of the
/// finitely many values of |f| on B.
double weak_morrey_norm(const SampledFunction& f, const MorreyParams& params, const Weight& w,
                        const BallFamily& balls);

/// sup_lambda lambda w({|f| > lambda})^{1/p} over the whole box.
double weak_lp_w_norm(const SampledFunction& f, double p, const Weight& w);

}  // namespace morreylab
