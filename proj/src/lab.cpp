#include "morreylab/lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <tuple>

#include "morreylab/czdecomp.hpp"
#include "morreylab/parallel.hpp"
#include "morreylab/rng.hpp"

namespace morreylab {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

bool requires_a1(const std::string& id) {
  return id == "T1.1" || id == "T1.2" || id == "C1.3" || id == "T3.1" || id == "T4.2" || id == "L4.1";
}

bool is_a1_exponent(double a, int dim) { return a > -dim && a <= 0.0; }

std::string weight_label(double a) { return "a=" + short_num(a); }

void finish_instance(InstanceResult& r) {
  if (r.rhs == 0.0) {
    r.skipped = true;
    r.ratio = 0.0;
  } else {
    r.ratio = r.lhs / r.rhs;
  }
}

double max_in(const std::vector<double>& v, const std::vector<std::size_t>& cells) {
  double m = 0.0;
  for (std::size_t i : cells) m = std::max(m, v[i]);
  return m;
}

// Everything an experiment needs that does not depend on the function.
struct Setup {
  const Corpus& corpus;
  const LabConfig& config;
  Grid grid;
  KernelBank bank;
  ConeSpec cone;
  GStarSpec gstar;
  BallFamily family;
  MorreyParams morrey;
  std::vector<Weight> weights;
};

using Rows = std::vector<InstanceResult>;

Rows estimate_rows(const std::string& id, const Setup& s, const CorpusFunction& cf) {
  const AlphaField field = compute_alpha_field(cf.values, s.bank, s.cone);
  SampledFunction op;
  std::string extra;
  if (id == "T1.1" || id == "T3.1") {
    op = s_alpha_field(field, 1.0);
  } else if (id == "T1.2" || id == "T4.2") {
    op = g_star_field(field, s.gstar.lambda);
  } else {
    op = g_alpha_field(field);
    // S and g carry the same energy up to the cone volume; far from the
    // support the truncated cone breaks the pointwise match, so compare L^2.
    const auto sf = s_alpha_field(field, 1.0);
    double ss = 0.0, gg = 0.0;
    for (std::size_t i = 0; i < sf.size(); ++i) {
      ss += sf[i] * sf[i];
      gg += op[i] * op[i];
    }
    const double k = gg > 0.0 && ss > 0.0 ? std::max(std::sqrt(ss / gg), std::sqrt(gg / ss)) : 0.0;
    extra = "comparability=" + num(k);
  }
  const bool weak_type = id == "T3.1" || id == "T4.2";
  Rows rows;
  for (std::size_t wi = 0; wi < s.weights.size(); ++wi) {
    const Weight& w = s.weights[wi];
    InstanceResult r;
    r.instance = cf.spec.descriptor();
    r.weight = weight_label(s.corpus.weight_exponents[wi]);
    if (weak_type) {
      r.lhs = weak_lp_w_norm(op, 1.0, w);
      r.rhs = lp_w_norm(cf.values, 1.0, w);
    } else {
      r.lhs = weak_morrey_norm(op, s.morrey, w, s.family);
      r.rhs = morrey_norm(cf.values, s.morrey, w, s.family);
    }
    r.flags = extra;
    finish_instance(r);
    rows.push_back(r);
  }
  return rows;
}

Rows aperture_rows(const Setup& s, const CorpusFunction& cf) {
  const AlphaField field = compute_alpha_field(cf.values, s.bank, s.cone);
  const int dim = s.grid.dim();
  Rows rows;
  // Norms run over the lattice beyond the box: a box-truncated norm loses
  // the part of each wide cone that sticks out, and that loss grows with beta.
  for (std::size_t wi = 0; wi < s.weights.size(); ++wi) {
    const double a = s.corpus.weight_exponents[wi];
    const Generator w = [a, dim](const Point& x) {
      return std::pow(dim == 1 ? std::abs(x[0]) : std::hypot(x[0], x[1]), a);
    };
    const double base_norm = std::sqrt(lattice_cone_energy(field, 1.0, w));
    for (double beta : s.config.apertures) {
      InstanceResult r;
      r.instance = cf.spec.descriptor() + "|beta=" + short_num(beta);
      r.weight = weight_label(a);
      r.lhs = std::sqrt(lattice_cone_energy(field, beta, w));
      r.rhs = std::pow(beta, 0.5 * dim) * base_norm;
      r.flags = "beta=" + num(beta);
      finish_instance(r);
      rows.push_back(r);
    }
  }
  return rows;
}

Rows ineq6_rows(const Setup& s, const CorpusFunction& cf) {
  const AlphaField field = compute_alpha_field(cf.values, s.bank, s.cone);
  const auto gs = g_star_field(field, s.gstar.lambda);
  const auto bound = g_star_shell_bound(field, s.gstar.lambda, s.gstar.shells);
  InstanceResult r;
  r.instance = cf.spec.descriptor();
  r.weight = "-";
  int violations = 0;
  double worst = -1.0;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    if (gs[i] > bound[i] * (1.0 + 1e-9)) ++violations;
    if (bound[i] > 0.0 && gs[i] / bound[i] > worst) {
      worst = gs[i] / bound[i];
      r.lhs = gs[i];
      r.rhs = bound[i];
    }
  }
  r.flags = "violations=" + std::to_string(violations);
  finish_instance(r);
  return {r};
}

// Sum over j >= 1 of the average of |f| over 2^{j+1} B, with f extended by zero.
double dyadic_average_sum(const SampledFunction& f, const Ball& ball) {
  const Grid& g = f.grid;
  const int n = g.dim();
  double total_mass = 0.0;
  for (double v : f.values) total_mass += std::abs(v);
  total_mass *= g.cell_volume();
  const double cover = std::sqrt(g.distance2(ball.center, Point{0.0, 0.0})) +
                       g.half_width() * std::sqrt(static_cast<double>(n));
  double sum = 0.0;
  for (int j = 1;; ++j) {
    const double radius = std::ldexp(ball.radius, j + 1);
    if (radius > cover) {
      // Every later ball holds all of f; the remaining terms are geometric.
      sum += total_mass / ball_volume(n, radius) / (1.0 - std::ldexp(1.0, -n));
      break;
    }
    double mass = 0.0;
    for (std::size_t i : cells_in(g, Ball{ball.center, radius})) mass += std::abs(f.values[i]);
    sum += mass * g.cell_volume() / ball_volume(n, radius);
  }
  return sum;
}

Rows tail_rows(const Setup& s, const CorpusFunction& cf) {
  const Grid& g = s.grid;
  std::optional<AlphaField> whole;
  Rows rows;
  for (std::size_t b = 0; b < s.family.size(); ++b) {
    const Ball& ball = s.family.ball(b);
    const double cells_radius = ball.radius / g.spacing();
    if (std::abs(cells_radius - 4.0) > 1e-9 && std::abs(cells_radius - 16.0) > 1e-9) continue;
    SampledFunction far = cf.values;
    bool touched = false;
    for (std::size_t i : cells_in(g, Ball{ball.center, 2.0 * ball.radius})) {
      touched |= far.values[i] != 0.0;
      far.values[i] = 0.0;
    }
    if (std::all_of(far.values.begin(), far.values.end(), [](double v) { return v == 0.0; })) continue;
    std::vector<double> energy;
    if (touched) {
      energy = cone_energy(compute_alpha_field(far, s.bank, s.cone), 1.0);
    } else {
      if (!whole) whole = compute_alpha_field(cf.values, s.bank, s.cone);
      energy = cone_energy(*whole, 1.0);
    }
    InstanceResult r;
    r.instance = cf.spec.descriptor() + "|ball=(" + short_num(ball.center[0]) +
                 (g.dim() == 2 ? "," + short_num(ball.center[1]) : "") + ";" + short_num(ball.radius) + ")";
    r.weight = "-";
    r.lhs = std::sqrt(max_in(energy, s.family.cells(b)));
    r.rhs = dyadic_average_sum(far, ball);
    finish_instance(r);
    rows.push_back(r);
  }
  return rows;
}

Rows cz_rows(const Setup& s, const CorpusFunction& cf, std::size_t index) {
  const Grid& g = s.grid;
  const auto root = root_cube(g);
  double root_avg = 0.0;
  for (double v : cf.values.values) root_avg += std::abs(v);
  root_avg /= static_cast<double>(g.size());
  Rows rows;
  Rng rng(derive_seed(s.corpus.seed, index));
  for (int h = 0; h < s.config.cz_heights; ++h) {
    const double sigma = root_avg * std::exp2(rng.uniform(0.05, 5.0));
    InstanceResult r;
    r.instance = cf.spec.descriptor() + "|sigma=" + num(sigma);
    r.weight = "-";
    if (root_avg == 0.0) {
      r.skipped = true;
      rows.push_back(r);
      continue;
    }
    const auto d = cz_decompose(cf.values, sigma, root);
    const auto rep = cz_verify(d, cf.values, sigma);
    r.lhs = rep.max_cube_average;
    r.rhs = std::ldexp(sigma, g.dim());
    r.flags = "cubes=" + std::to_string(d.cubes.size()) + ";" + (rep.all() ? "pass" : "fail");
    for (const auto& f : rep.failures) r.flags += ";" + f;
    finish_instance(r);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace

void LabConfig::validate() const {
  if (dim != 1 && dim != 2) throw Error("grid.dim must be 1 or 2");
  if (!(alpha > 0.0) || alpha > 1.0) throw Error("bank.alpha must lie in (0, 1]");
  if (bank_size < 1) throw Error("bank.size must be >= 1");
  if (!(kappa > 0.0) || !(kappa < 1.0)) throw Error("morrey.kappa must lie in (0, 1)");
  if (!(p >= 1.0)) throw Error("morrey.p must be >= 1");
  if (!(lambda > 1.0)) throw Error("gstar.lambda must be > 1");
  if (shells < 0) throw Error("gstar.shells must be >= 0");
  if (scales_per_octave < 2) throw Error("cone.scales_per_octave must be >= 2");
  for (double b : apertures)
    if (!(b >= 1.0)) throw Error("cone.apertures entries must be >= 1");
  if (cz_heights < 0) throw Error("cz.heights must be >= 0");
  if (!(half_width > 0.0) || !std::isfinite(half_width)) throw Error("grid.half_width must be positive");
  if (points < 8 || (points & (points - 1)) != 0) throw Error("grid.points must be a power of two >= 8");
  const ConeSpec c = cone();
  if (!(c.t_min > 0.0) || !(c.t_min < c.t_max)) throw Error("cone.t_min and cone.t_max need 0 < t_min < t_max");
  if (stride < 0) throw Error("family.stride must be >= 0");
  if (k_min < 0) throw Error("family.k_min must be >= 0");
  if (k_max != -1 && k_max < k_min) throw Error("family.k_max must be >= family.k_min");
  if (k_max == -1 && k_min > default_k_max(grid())) throw Error("family.k_min exceeds the largest radius");
}

Grid LabConfig::grid() const { return Grid::build(dim, half_width, points); }

ConeSpec LabConfig::cone() const {
  const Grid g = grid();
  ConeSpec c = ConeSpec::defaults(g);
  if (t_min > 0.0) c.t_min = t_min;
  if (t_max > 0.0) c.t_max = t_max;
  c.scales_per_octave = scales_per_octave;
  return c;
}

GStarSpec LabConfig::gstar() const {
  GStarSpec s;
  s.lambda = lambda;
  s.cone = cone();
  s.shells = shells > 0 ? shells : covering_shells(grid(), s.cone);
  return s;
}

BallFamily LabConfig::family() const { return BallFamily::lattice(grid(), stride, k_min, k_max); }

Grid bank_reference_grid(int dim) { return Grid::build(dim, 1.0, 64); }

KernelBank LabConfig::bank() const {
  return build_bank(alpha, static_cast<std::size_t>(bank_size), bank_seed, bank_reference_grid(dim));
}

const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids{"T1.1", "T1.2", "C1.3", "T3.1", "T4.2",
                                            "L4.1", "INEQ6", "TAIL", "CZ"};
  return ids;
}

Provenance make_provenance(const LabConfig& config) {
  Provenance p;
  const ConeSpec cone = config.cone();
  const BallFamily fam = config.family();
  p.dim = config.dim;
  p.half_width = config.half_width;
  p.points = config.points;
  p.alpha = config.alpha;
  p.bank_size = config.bank_size;
  p.bank_seed = config.bank_seed;
  p.bank_reference_points = bank_reference_grid(config.dim).points_per_axis();
  for (const auto& k : config.bank().members) {
    p.bank_parameters.push_back({k.first().center[0], k.first().center[1], k.first().radius, k.second().center[0],
                                 k.second().center[1], k.second().radius, k.c1(), k.c2()});
  }
  p.apertures = config.apertures;
  p.t_min = cone.t_min;
  p.t_max = cone.t_max;
  p.scales_per_octave = cone.scales_per_octave;
  p.stride = fam.stride();
  p.k_min = fam.k_min();
  p.k_max = fam.k_max();
  p.p = config.p;
  p.kappa = config.kappa;
  p.lambda = config.lambda;
  p.shells = config.gstar().shells;
  p.corpus_seed = config.corpus_seed;
  return p;
}

std::string ExperimentReport::flag(const std::string& key) const {
  for (const auto& [k, v] : flags)
    if (k == key) return v;
  return {};
}

ExperimentReport run_experiment(const std::string& id, const Corpus& corpus, const LabConfig& config) {
  const auto& ids = experiment_ids();
  if (std::find(ids.begin(), ids.end(), id) == ids.end()) throw Error("unknown experiment '" + id + "'");
  config.validate();
  corpus.validate();
  const Grid grid = config.grid();
  if (!(corpus.grid == grid)) throw Error("corpus grid does not match the configured grid");
  if (requires_a1(id)) {
    for (double a : corpus.weight_exponents)
      if (!is_a1_exponent(a, grid.dim()))
        throw Error("experiment " + id + " needs A_1 weights; |x|^" + short_num(a) + " is not in A_1");
  }

  Setup s{corpus, config, grid, config.bank(), config.cone(), config.gstar(), config.family(), config.morrey(), {}};
  for (double a : corpus.weight_exponents) s.weights.push_back(build_power_weight(a, grid));

  ExperimentReport rep;
  rep.experiment = id;
  rep.provenance = make_provenance(config);

  std::vector<Rows> per_function(corpus.functions.size());
  parallel_for(corpus.functions.size(), [&](std::size_t fi) {
    const auto& cf = corpus.functions[fi];
    if (id == "L4.1")
      per_function[fi] = aperture_rows(s, cf);
    else if (id == "INEQ6")
      per_function[fi] = ineq6_rows(s, cf);
    else if (id == "TAIL")
      per_function[fi] = tail_rows(s, cf);
    else if (id == "CZ")
      per_function[fi] = cz_rows(s, cf, fi);
    else
      per_function[fi] = estimate_rows(id, s, cf);
  });
  for (auto& rows : per_function)
    for (auto& r : rows) rep.instances.push_back(std::move(r));

  for (const auto& r : rep.instances) {
    if (r.skipped)
      ++rep.skipped;
    else
      rep.max_ratio = std::max(rep.max_ratio, r.ratio);
  }

  if (id == "T1.2" || id == "T4.2") {
    const double thr = GStarSpec::threshold(grid.dim(), config.alpha);
    rep.flags.emplace_back("lambda_threshold", num(thr));
    rep.flags.emplace_back("lambda_above_threshold", config.lambda > thr ? "true" : "false");
    if (config.lambda <= thr) rep.flags.emplace_back("guarantee", "no guarantee below threshold");
  }
  if (id == "T3.1") {
    // The A_1 step behind the weak (1,1) bound: M w <= C w on the shared family.
    for (std::size_t wi = 0; wi < s.weights.size(); ++wi) {
      const auto& w = s.weights[wi];
      const double a1 = muckenhoupt_characteristic(w, 1.0, s.family);
      const auto mw = hl_maximal(w, s.family);
      double worst = 0.0;
      for (std::size_t i = 0; i < mw.size(); ++i) worst = std::max(worst, mw[i] / w.data.values[i]);
      const std::string label = weight_label(corpus.weight_exponents[wi]);
      rep.flags.emplace_back("a1_characteristic[" + label + "]", num(a1));
      rep.flags.emplace_back("max_Mw_over_w[" + label + "]", num(worst));
    }
  }
  if (id == "C1.3") {
    double k = 0.0;
    for (const auto& r : rep.instances) {
      const auto pos = r.flags.find("comparability=");
      if (pos != std::string::npos) k = std::max(k, std::stod(r.flags.substr(pos + 14)));
    }
    rep.flags.emplace_back("comparability_constant", num(k));
  }
  if (id == "INEQ6") {
    long total = 0;
    for (const auto& r : rep.instances) total += std::stol(r.flags.substr(r.flags.find('=') + 1));
    rep.flags.emplace_back("shells", std::to_string(s.gstar.shells));
    rep.flags.emplace_back("shells_cover_box",
                           s.gstar.shells >= covering_shells(grid, s.cone) ? "true" : "false");
    rep.flags.emplace_back("violations", std::to_string(total));
  }
  if (id == "CZ") {
    int failures = 0;
    for (const auto& r : rep.instances)
      if (r.flags.find("fail") != std::string::npos) ++failures;
    rep.flags.emplace_back("good_convention", "signed-average");
    rep.flags.emplace_back("failures", std::to_string(failures));
  }
  return rep;
}

namespace {

struct SearchInstance {
  FunctionSpec spec;
  double exponent = 0.0;
  double kappa = 0.5;

  std::string descriptor() const {
    return spec.descriptor() + " a=" + short_num(exponent) + " kappa=" + short_num(kappa);
  }
};

FunctionSpec random_spec(FunctionKind kind, int dim, double min_width, Rng& rng) {
  auto c = [&] { return rng.uniform(-0.4, 0.4); };
  auto cy = [&] { return dim == 2 ? rng.uniform(-0.4, 0.4) : 0.0; };
  auto w = [&] { return rng.uniform(min_width, 0.25); };
  FunctionSpec s{kind, {}};
  switch (kind) {
    case FunctionKind::Zero: break;
    case FunctionKind::Bump: s.params = {c(), cy(), w(), 1.0}; break;
    case FunctionKind::BumpPair: s.params = {c(), cy(), w(), c(), cy(), w()}; break;
    case FunctionKind::Indicator: s.params = {c(), cy(), w()}; break;
    case FunctionKind::Oscillating: s.params = {c(), cy(), w(), rng.uniform(1.0, 16.0)}; break;
  }
  return s.clamped(dim, min_width);
}

SearchInstance perturb(const SearchInstance& base, double scale, const SearchFamily& family, int dim,
                       double min_width, Rng& rng) {
  SearchInstance out = base;
  auto& p = out.spec.params;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const bool frequency = out.spec.kind == FunctionKind::Oscillating && i == 3;
    const bool amplitude = out.spec.kind == FunctionKind::Bump && i == 3;
    if (amplitude) continue;
    p[i] += rng.normal() * scale * (frequency ? 20.0 : 1.0);
  }
  out.spec = out.spec.clamped(dim, min_width);
  if (family.vary_weight)
    out.exponent = std::clamp(base.exponent + rng.normal() * scale * dim, -0.95 * dim, 0.0);
  if (family.vary_kappa) out.kappa = std::clamp(base.kappa + rng.normal() * scale, 0.05, 0.95);
  return out;
}

}  // namespace

ExperimentReport adversarial_search(const std::string& id, const SearchFamily& family, int budget,
                                    std::uint64_t seed, const LabConfig& config) {
  const auto& ids = experiment_ids();
  if (std::find(ids.begin(), ids.end(), id) == ids.end()) throw Error("unknown experiment '" + id + "'");
  if (budget < 1) throw Error("search budget must be >= 1");
  if (family.kinds.empty()) throw Error("search family has no function kinds");
  config.validate();
  const Grid grid = config.grid();
  const int dim = grid.dim();
  const double min_width = minimum_width(grid);

  auto evaluate = [&](const SearchInstance& inst, InstanceResult& row) {
    LabConfig cfg = config;
    cfg.kappa = inst.kappa;
    const Corpus corpus = corpus_from_specs(grid, {inst.spec}, {inst.exponent}, config.corpus_seed);
    const auto rep = run_experiment(id, corpus, cfg);
    row = InstanceResult{};
    for (const auto& r : rep.instances)
      if (!r.skipped && (row.instance.empty() || r.ratio > row.ratio)) row = r;
    row.instance = inst.descriptor();
    row.weight = weight_label(inst.exponent);
    if (row.rhs == 0.0) row.skipped = true;
    return rep.max_ratio;
  };

  constexpr int kProposalsPerRestart = 15;
  constexpr int kRejectionsPerHalving = 10;

  Rng rng(seed);
  ExperimentReport rep;
  rep.experiment = id;
  rep.provenance = make_provenance(config);
  std::string trace;
  std::string best_descriptor;
  double best = 0.0;
  int evals = 0;
  auto record = [&](const SearchInstance& inst, const InstanceResult& row, double ratio) {
    rep.instances.push_back(row);
    if (row.skipped) ++rep.skipped;
    if (ratio > best || best_descriptor.empty()) {
      best = std::max(best, ratio);
      best_descriptor = inst.descriptor();
    }
    trace += (trace.empty() ? "" : ",") + num(best);
  };

  // Every corpus instance is evaluated up front, outside the budget, so the
  // search never reports less than the corpus does. The ranked pool then
  // supplies the first restarts.
  std::vector<std::pair<SearchInstance, double>> pool;
  const Corpus base = default_corpus(grid, config.corpus_seed);
  for (const auto& cf : base.functions) {
    for (double a : base.weight_exponents) {
      const SearchInstance inst{cf.spec, a, config.kappa};
      InstanceResult row;
      const double ratio = evaluate(inst, row);
      record(inst, row, ratio);
      pool.emplace_back(inst, ratio);
    }
  }
  const int corpus_evals = static_cast<int>(pool.size());
  std::stable_sort(pool.begin(), pool.end(), [](const auto& x, const auto& y) { return x.second > y.second; });

  std::size_t restart = 0;
  while (evals < budget) {
    SearchInstance current;
    double current_ratio = 0.0;
    if (restart < pool.size()) {
      std::tie(current, current_ratio) = pool[restart];
    } else {
      const FunctionKind kind = family.kinds[rng.below(family.kinds.size())];
      current.spec = random_spec(kind, dim, min_width, rng);
      current.exponent = family.vary_weight ? rng.uniform(-0.9 * dim, 0.0) : 0.0;
      current.kappa = family.vary_kappa ? rng.uniform(0.1, 0.9) : config.kappa;
      InstanceResult row;
      current_ratio = evaluate(current, row);
      record(current, row, current_ratio);
      ++evals;
    }
    ++restart;

    double scale = 0.1;
    int rejections = 0;
    for (int step = 0; step < kProposalsPerRestart && evals < budget; ++step) {
      const SearchInstance proposal = perturb(current, scale, family, dim, min_width, rng);
      InstanceResult prow;
      const double ratio = evaluate(proposal, prow);
      record(proposal, prow, ratio);
      ++evals;
      if (ratio > current_ratio) {
        current = proposal;
        current_ratio = ratio;
        rejections = 0;
      } else if (++rejections == kRejectionsPerHalving) {
        scale *= 0.5;
        rejections = 0;
      }
    }
  }
  rep.max_ratio = best;
  rep.flags.emplace_back("best_instance", best_descriptor);
  rep.flags.emplace_back("best_ratio", num(best));
  rep.flags.emplace_back("corpus_evaluations", std::to_string(corpus_evals));
  rep.flags.emplace_back("evaluations", std::to_string(evals));
  rep.flags.emplace_back("best_so_far", trace);
  rep.flags.emplace_back("seed", std::to_string(seed));
  return rep;
}

ConvergenceAxis convergence_axis_from_string(const std::string& name) {
  for (auto a : {ConvergenceAxis::GridPoints, ConvergenceAxis::BankSize, ConvergenceAxis::ScalesPerOctave,
                 ConvergenceAxis::TRange, ConvergenceAxis::Shells, ConvergenceAxis::FamilyStride})
    if (to_string(a) == name) return a;
  throw Error("unknown convergence axis '" + name + "' (expected N, bank, m, t_range, J or stride)");
}

std::string to_string(ConvergenceAxis axis) {
  switch (axis) {
    case ConvergenceAxis::GridPoints: return "N";
    case ConvergenceAxis::BankSize: return "bank";
    case ConvergenceAxis::ScalesPerOctave: return "m";
    case ConvergenceAxis::TRange: return "t_range";
    case ConvergenceAxis::Shells: return "J";
    case ConvergenceAxis::FamilyStride: return "stride";
  }
  return "?";
}

LabConfig with_axis(const LabConfig& config, ConvergenceAxis axis, double value) {
  LabConfig c = config;
  const auto as_int = [&] { return static_cast<int>(std::lround(value)); };
  switch (axis) {
    case ConvergenceAxis::GridPoints: c.points = as_int(); break;
    case ConvergenceAxis::BankSize: c.bank_size = as_int(); break;
    case ConvergenceAxis::ScalesPerOctave: c.scales_per_octave = as_int(); break;
    case ConvergenceAxis::TRange: {
      const ConeSpec base = config.cone();
      c.t_min = base.t_min * std::exp2(-value);
      c.t_max = base.t_max * std::exp2(value);
      break;
    }
    case ConvergenceAxis::Shells: c.shells = as_int(); break;
    case ConvergenceAxis::FamilyStride: c.stride = as_int(); break;
  }
  return c;
}

ExperimentReport convergence_study(const std::string& id, const LabConfig& config, ConvergenceAxis axis,
                                   const std::vector<double>& values, const CorpusFactory& corpus) {
  if (values.size() < 2) throw Error("convergence study needs at least two axis values");
  bool up = true, down = true;
  for (std::size_t i = 1; i < values.size(); ++i) {
    up &= values[i] > values[i - 1];
    down &= values[i] < values[i - 1];
  }
  if (!up && !down) throw Error("convergence axis values are not monotone");

  ExperimentReport rep;
  rep.experiment = id;
  rep.provenance = make_provenance(config);
  std::string drifts;
  double max_drift = 0.0;
  double previous = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const LabConfig cfg = with_axis(config, axis, values[i]);
    const Grid g = cfg.grid();
    const Corpus c = corpus ? corpus(g) : default_corpus(g, cfg.corpus_seed);
    const auto level = run_experiment(id, c, cfg);
    InstanceResult r;
    r.instance = to_string(axis) + "=" + short_num(values[i]);
    r.weight = "all";
    r.lhs = level.max_ratio;
    r.rhs = 1.0;
    r.ratio = level.max_ratio;
    r.skipped = level.skipped == static_cast<int>(level.instances.size());
    double drift = 0.0;
    if (i > 0) {
      drift = previous > 0.0 ? std::abs(level.max_ratio - previous) / previous : 0.0;
      drifts += (drifts.empty() ? "" : ",") + num(drift);
      max_drift = std::max(max_drift, drift);
    }
    r.flags = "drift=" + num(drift) + ";skipped=" + std::to_string(level.skipped) + "/" +
              std::to_string(level.instances.size());
    if (r.skipped) {
      r.ratio = 0.0;
      ++rep.skipped;
    } else {
      rep.max_ratio = std::max(rep.max_ratio, r.ratio);
    }
    rep.instances.push_back(r);
    previous = level.max_ratio;
  }
  rep.flags.emplace_back("axis", to_string(axis));
  rep.flags.emplace_back("drifts", drifts);
  rep.flags.emplace_back("max_drift", num(max_drift));
  return rep;
}

}  // namespace morreylab
