#include <cmath>

#include "doctest.h"
#include "morreylab/corpus.hpp"
#include "morreylab/rng.hpp"
#include "morreylab/spaces.hpp"
#include "support.hpp"

using namespace morreylab;

namespace {

SampledFunction random_function(const Grid& g, Rng& rng) {
  auto f = SampledFunction::zeros(g);
  for (auto& v : f.values) {
    const double u = rng.uniform();
    v = u < 0.4 ? 0.0 : (u < 0.6 ? 1.0 : rng.normal());  // ties and zeros on purpose
  }
  return f;
}

}  // namespace

TEST_CASE("weighted Lebesgue norm") {
  const Grid g = Grid::build(1, 1.0, 128);
  const Weight one = build_power_weight(0.0, g);
  const auto ind = FunctionSpec{FunctionKind::Indicator, {0.1, 0.0, 0.2}}.realize(g);
  double k = 0;
  for (double v : ind.values) k += v;
  CHECK(lp_w_norm(ind, 1.0, one) == k * g.spacing());

  const Weight w = build_power_weight(-0.5, g);
  const auto f = FunctionSpec{FunctionKind::Bump, {-0.1, 0.0, 0.3, 1.5}}.realize(g);
  double oracle = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = std::abs(g.center(i)[0]);
    oracle += f[i] * f[i] / std::sqrt(x);
  }
  oracle = std::sqrt(oracle * g.spacing());
  CHECK(rel_diff(lp_w_norm(f, 2.0, w), oracle) < 1e-12);
  CHECK(weak_lp_w_norm(ind, 1.0, w) == lp_w_norm(ind, 1.0, w));
}

TEST_CASE("local distribution") {
  const Grid g = Grid::build(1, 1.0, 64);
  const Weight w = build_power_weight(-0.25, g);
  const auto f = FunctionSpec{FunctionKind::Bump, {0.0, 0.0, 0.4, 2.0}}.realize(g);
  const Ball b{{0.05, 0.0}, 0.2};
  CHECK(local_distribution(f, w, b, 2.0) == 0.0);
  double wb = 0.0;
  for (std::size_t i : cells_in(g, b)) wb += w.data[i];
  CHECK(rel_diff(local_distribution(f, w, b, 0.0), wb * g.spacing()) < 1e-15);
}

TEST_CASE("Morrey norms of simple functions") {
  const Grid g = Grid::build(1, 1.0, 128);
  const Weight one = build_power_weight(0.0, g);
  const BallFamily fam = BallFamily::lattice(g);
  const MorreyParams mp{1.0, 0.5};
  const auto zero = SampledFunction::zeros(g);
  CHECK(morrey_norm(zero, mp, one, fam) == 0.0);
  CHECK(weak_morrey_norm(zero, mp, one, fam) == 0.0);

  const auto ones = sample_on_grid([](const Point&) { return 1.0; }, g);
  std::size_t largest = 0;
  for (std::size_t b = 0; b < fam.size(); ++b) largest = std::max(largest, fam.cells(b).size());
  const double vol = static_cast<double>(largest) * g.spacing();
  CHECK(rel_diff(morrey_norm(ones, mp, one, fam), std::pow(vol, 0.5)) < 1e-14);

  const auto ind = FunctionSpec{FunctionKind::Indicator, {0.1, 0.0, 0.2}}.realize(g);
  for (double a : {0.0, -0.5}) {
    const Weight w = build_power_weight(a, g);
    CHECK(weak_morrey_norm(ind, mp, w, fam) == morrey_norm(ind, mp, w, fam));
  }
  CHECK_FALSE(error_of([&] { morrey_norm(ind, mp, one, BallFamily{}); }).empty());
  CHECK_FALSE(error_of([&] { morrey_norm(ind, MorreyParams{1.0, 1.0}, one, fam); }).empty());
}

TEST_CASE("weak norm never exceeds strong norm") {
  Rng rng(42);
  for (int dim : {1, 2}) {
    const Grid g = Grid::build(dim, 1.0, dim == 1 ? 64 : 16);
    const BallFamily fam = BallFamily::lattice(g, 2, 0, -1);
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = random_function(g, rng);
      const Weight w = build_power_weight(-rng.uniform(0.0, 0.9) * dim, g);
      for (double p : {1.0, 1.5, 2.0})
        for (double kappa : {0.1, 0.5, 0.9}) {
          const MorreyParams mp{p, kappa};
          CHECK(weak_morrey_norm(f, mp, w, fam) <= morrey_norm(f, mp, w, fam));
        }
      CHECK(weak_lp_w_norm(f, 1.0, w) <= lp_w_norm(f, 1.0, w));
    }
  }
}

TEST_CASE("Morrey norm properties") {
  const Grid g = Grid::build(1, 1.0, 128);
  const Weight w = build_power_weight(-0.5, g);
  const auto f = FunctionSpec{FunctionKind::BumpPair, {-0.2, 0.0, 0.1, 0.15, 0.0, 0.2}}.realize(g);
  const BallFamily small = BallFamily::lattice(g, 16, 1, 3);
  const BallFamily big = small.merged(BallFamily::lattice(g));
  for (double kappa : {0.25, 0.5}) {
    const MorreyParams mp{1.0, kappa};
    CHECK(morrey_norm(f, mp, w, big) >= morrey_norm(f, mp, w, small));
    CHECK(weak_morrey_norm(f, mp, w, big) >= weak_morrey_norm(f, mp, w, small));

    auto g3 = f;
    for (auto& v : g3.values) v *= -3.0;
    CHECK(rel_diff(morrey_norm(g3, mp, w, big), 3.0 * morrey_norm(f, mp, w, big)) < 1e-12);
    CHECK(rel_diff(weak_morrey_norm(g3, mp, w, big), 3.0 * weak_morrey_norm(f, mp, w, big)) < 1e-12);

    auto smaller = f;
    for (auto& v : smaller.values) v *= 0.5 + 0.25 * std::sin(v);
    CHECK(morrey_norm(smaller, mp, w, big) <= morrey_norm(f, mp, w, big));
    CHECK(weak_morrey_norm(smaller, mp, w, big) <= weak_morrey_norm(f, mp, w, big));

    const double c = 4.0;
    CHECK(rel_diff(morrey_norm(f, mp, w.scaled(c), big), std::pow(c, 1.0 - kappa) * morrey_norm(f, mp, w, big)) <
          1e-12);
  }
}
