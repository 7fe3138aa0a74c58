#include <cmath>
#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "morreylab/lab.hpp"
#include "support.hpp"

using namespace morreylab;

namespace {

LabConfig small_config() {
  LabConfig c;
  c.points = 128;
  c.bank_size = 8;
  return c;
}

Corpus scaled_corpus(const Corpus& c, double factor) {
  Corpus out = c;
  for (auto& f : out.functions)
    for (auto& v : f.values.values) v *= factor;
  return out;
}

bool all_finite(const ExperimentReport& r) {
  for (const auto& i : r.instances)
    if (!std::isfinite(i.ratio) || i.ratio < 0.0) return false;
  return std::isfinite(r.max_ratio);
}

}  // namespace

TEST_CASE("default corpus") {
  const Grid g = Grid::build(1, 1.0, 256);
  const Corpus c = default_corpus(g, 11);
  CHECK(c.functions.size() == 12);
  CHECK(c.weight_exponents == std::vector<double>{0.0, -0.25, -0.5});
  const Corpus c2 = default_corpus(Grid::build(2, 1.0, 32), 11);
  CHECK(c2.weight_exponents == std::vector<double>{0.0, -0.5, -1.0});
  CHECK_FALSE(error_of([&] { corpus_from_specs(g, {{FunctionKind::Bump, {0.9, 0.0, 0.2, 1.0}}}, {0.0}, 1); }).empty());
}

TEST_CASE("norm ratio experiments on the default corpus") {
  const LabConfig cfg = small_config();
  const Corpus corpus = default_corpus(cfg.grid(), cfg.corpus_seed);
  for (const char* id : {"T1.1", "T1.2", "C1.3", "T3.1", "T4.2"}) {
    const auto rep = run_experiment(id, corpus, cfg);
    CHECK(rep.instances.size() == 36);
    CHECK(rep.skipped == 0);
    CHECK(all_finite(rep));
    CHECK(rep.max_ratio > 0.0);

    // Both sides are homogeneous of degree one in f.
    const auto tripled = run_experiment(id, scaled_corpus(corpus, 3.0), cfg);
    for (std::size_t i = 0; i < rep.instances.size(); ++i)
      CHECK(rel_diff(tripled.instances[i].ratio, rep.instances[i].ratio) < 1e-10);
  }
  const auto t12 = run_experiment("T1.2", corpus, cfg);
  CHECK(t12.flag("lambda_above_threshold") == "true");
  LabConfig low = cfg;
  low.lambda = 4.0;
  const auto below = run_experiment("T1.2", corpus, low);
  CHECK(below.flag("lambda_above_threshold") == "false");
  CHECK(below.flag("guarantee") == "no guarantee below threshold");
  CHECK_FALSE(run_experiment("C1.3", corpus, cfg).flag("comparability_constant").empty());
}

TEST_CASE("weight scaling cancels in the ratios") {
  const LabConfig cfg = small_config();
  const Grid g = cfg.grid();
  const auto f = FunctionSpec{FunctionKind::BumpPair, {-0.1, 0.0, 0.08, 0.1, 0.0, 0.08}}.realize(g);
  const auto s = s_alpha_field(compute_alpha_field(f, cfg.bank(), cfg.cone()), 1.0);
  const Weight w = build_power_weight(-0.5, g);
  const Weight cw = w.scaled(7.0);
  const BallFamily fam = cfg.family();
  const double weak = weak_lp_w_norm(s, 1.0, w) / lp_w_norm(f, 1.0, w);
  CHECK(rel_diff(weak_lp_w_norm(s, 1.0, cw) / lp_w_norm(f, 1.0, cw), weak) < 1e-10);
  const double morrey = weak_morrey_norm(s, cfg.morrey(), w, fam) / morrey_norm(f, cfg.morrey(), w, fam);
  CHECK(rel_diff(weak_morrey_norm(s, cfg.morrey(), cw, fam) / morrey_norm(f, cfg.morrey(), cw, fam), morrey) <
        1e-10);
}

TEST_CASE("experiment errors") {
  const LabConfig cfg = small_config();
  const Corpus corpus = default_corpus(cfg.grid(), cfg.corpus_seed);
  CHECK(contains(error_of([&] { run_experiment("T9.9", corpus, cfg); }), "unknown experiment"));
  Corpus bad = corpus;
  bad.weight_exponents = {0.5};
  CHECK(contains(error_of([&] { run_experiment("T1.1", bad, cfg); }), "A_1"));
  CHECK(error_of([&] { run_experiment("CZ", bad, cfg); }).empty());
  LabConfig other = cfg;
  other.points = 64;
  CHECK_FALSE(error_of([&] { run_experiment("T1.1", corpus, other); }).empty());
}

TEST_CASE("shell family ratios are uniform in j") {
  LabConfig cfg = small_config();
  const Corpus one = corpus_from_specs(cfg.grid(), {{FunctionKind::Bump, {0.0, 0.0, 0.1, 1.0}}}, {0.0}, 1);
  const auto rep = run_experiment("L4.1", one, cfg);
  REQUIRE(rep.instances.size() == 4);
  double lo = 1e300, hi = 0.0;
  for (const auto& r : rep.instances) {
    lo = std::min(lo, r.ratio);
    hi = std::max(hi, r.ratio);
  }
  CHECK(hi <= 2.0 * lo);
}

TEST_CASE("pointwise shell bound, tail and decomposition experiments") {
  const LabConfig cfg = small_config();
  const Corpus corpus = default_corpus(cfg.grid(), cfg.corpus_seed);
  const auto ineq = run_experiment("INEQ6", corpus, cfg);
  CHECK(ineq.flag("violations") == "0");
  CHECK(ineq.flag("shells_cover_box") == "true");
  CHECK(ineq.max_ratio <= 1.0);

  const auto tail = run_experiment("TAIL", corpus, cfg);
  CHECK_FALSE(tail.instances.empty());
  CHECK(all_finite(tail));
  for (const auto& r : tail.instances) CHECK(r.rhs > 0.0);

  const auto cz = run_experiment("CZ", corpus, cfg);
  CHECK(cz.instances.size() == 48);
  CHECK(cz.flag("failures") == "0");
  CHECK(cz.flag("good_convention") == "signed-average");
  CHECK(cz.max_ratio <= 1.0);
}

TEST_CASE("adversarial search") {
  LabConfig cfg = small_config();
  cfg.points = 64;
  const SearchFamily fam;
  const auto a = adversarial_search("T1.1", fam, 10, 5, cfg);
  const auto b = adversarial_search("T1.1", fam, 10, 5, cfg);
  CHECK(a == b);
  const auto longer = adversarial_search("T1.1", fam, 40, 5, cfg);
  CHECK(longer.max_ratio >= a.max_ratio);
  CHECK(longer.flag("best_so_far").rfind(a.flag("best_so_far"), 0) == 0);

  // Best-so-far never decreases.
  std::stringstream trace(longer.flag("best_so_far"));
  std::string item;
  double prev = 0.0;
  while (std::getline(trace, item, ',')) {
    CHECK(std::stod(item) >= prev);
    prev = std::stod(item);
  }

  const auto corpus = run_experiment("T1.1", default_corpus(cfg.grid(), cfg.corpus_seed), cfg);
  CHECK(a.max_ratio >= corpus.max_ratio);
  CHECK(contains(error_of([&] { adversarial_search("nope", fam, 5, 1, cfg); }), "unknown experiment"));
  CHECK_FALSE(error_of([&] { adversarial_search("T1.1", fam, 0, 1, cfg); }).empty());
}

TEST_CASE("convergence study") {
  LabConfig cfg = small_config();
  const auto rep = convergence_study("T1.1", cfg, ConvergenceAxis::GridPoints, {64, 128, 256});
  CHECK(rep.instances.size() == 3);
  std::stringstream ds(rep.flag("drifts"));
  std::string item;
  int drifts = 0;
  while (std::getline(ds, item, ',')) ++drifts;
  CHECK(drifts == 2);

  const CorpusFactory zero = [](const Grid& g) {
    return corpus_from_specs(g, {{FunctionKind::Zero, {}}}, {0.0}, 1);
  };
  for (auto axis : {ConvergenceAxis::BankSize, ConvergenceAxis::ScalesPerOctave}) {
    const auto z = convergence_study("T1.1", cfg, axis, {4, 8}, zero);
    CHECK(z.skipped == 2);
    for (const auto& r : z.instances) CHECK(r.skipped);
  }
  CHECK(contains(error_of([&] { convergence_study("T1.1", cfg, ConvergenceAxis::BankSize, {8, 4, 16}); }),
                 "monotone"));
  CHECK_FALSE(error_of([&] { convergence_study("T1.1", cfg, ConvergenceAxis::BankSize, {8}); }).empty());
  CHECK(convergence_axis_from_string("t_range") == ConvergenceAxis::TRange);
}

TEST_CASE("results do not depend on the worker count") {
  const LabConfig cfg = small_config();
  const Corpus corpus = default_corpus(cfg.grid(), cfg.corpus_seed);
  setenv("MORREYLAB_THREADS", "1", 1);
  const auto one = run_experiment("T1.2", corpus, cfg);
  setenv("MORREYLAB_THREADS", "4", 1);
  const auto four = run_experiment("T1.2", corpus, cfg);
  unsetenv("MORREYLAB_THREADS");
  CHECK(one == four);
}
