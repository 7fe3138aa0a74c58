// Acceptance suite: one PASS/FAIL line per criterion. The optional argument is
// the path of the command-line binary, used for the reproducibility check.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <unistd.h>

#include "morreylab/czdecomp.hpp"
#include "morreylab/lab.hpp"
#include "morreylab/rng.hpp"

using namespace morreylab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const Outcome& o) {
  std::cout << "criterion " << id << " [" << name << "]: " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail
            << std::endl;
  if (!o.pass) ++failures;
}

std::string g6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

LabConfig config_for(int dim) {
  LabConfig c;
  c.dim = dim;
  c.points = dim == 1 ? 256 : 32;
  return c;
}

SampledFunction scaled(const SampledFunction& f, double c) {
  auto out = f;
  for (auto& v : out.values) v *= c;
  return out;
}

SampledFunction shifted(const SampledFunction& f, int cells) {
  const Grid& g = f.grid;
  auto out = SampledFunction::zeros(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto c = g.coords(i);
    if (f[i] != 0.0) out.values[g.index(c[0] + cells, c[1])] = f[i];
  }
  return out;
}

// S_1, S_2, g and g* from one field.
std::vector<SampledFunction> operators(const AlphaField& a, double lambda) {
  return {s_alpha_field(a, 1.0), s_alpha_field(a, 2.0), g_alpha_field(a), g_star_field(a, lambda)};
}

Outcome operator_algebra() {
  long checks = 0, violations = 0;
  std::string where;
  auto fail = [&](const std::string& what) {
    ++violations;
    if (where.empty()) where = what;
  };
  for (int dim : {1, 2}) {
    const LabConfig cfg = config_for(dim);
    const Grid g = cfg.grid();
    const Corpus corpus = default_corpus(g, cfg.corpus_seed);
    const KernelBank bank = cfg.bank();
    LabConfig bigger = cfg;
    bigger.bank_size *= 2;
    const KernelBank big = bigger.bank();
    const ConeSpec cone = cfg.cone();
    ConeSpec short_cone = cone;
    short_cone.t_max = 0.25 * g.half_width();
    const int shift = g.points_per_axis() / 16;

    for (std::size_t fi = 0; fi < corpus.functions.size(); ++fi) {
      const auto& f = corpus.functions[fi].values;
      const auto& next = corpus.functions[(fi + 1) % corpus.functions.size()].values;
      const auto base = operators(compute_alpha_field(f, bank, cone), cfg.lambda);

      for (double c : {3.0, -2.0}) {
        const auto sc = operators(compute_alpha_field(scaled(f, c), bank, cone), cfg.lambda);
        for (std::size_t o = 0; o < base.size(); ++o)
          for (std::size_t i = 0; i < g.size(); ++i, ++checks)
            if (std::abs(sc[o][i] - std::abs(c) * base[o][i]) > 1e-12 * std::abs(c) * base[o][i]) fail("homogeneity");
      }

      auto sum = f;
      for (std::size_t i = 0; i < g.size(); ++i) sum.values[i] += next[i];
      const auto other = operators(compute_alpha_field(next, bank, cone), cfg.lambda);
      const auto both = operators(compute_alpha_field(sum, bank, cone), cfg.lambda);
      for (std::size_t o = 0; o < base.size(); ++o)
        for (std::size_t i = 0; i < g.size(); ++i, ++checks)
          if (both[o][i] > (base[o][i] + other[o][i]) * (1 + 1e-12)) fail("subadditivity");

      const auto field = compute_alpha_field(f, bank, cone);
      std::vector<double> prev(g.size(), 0.0);
      for (double beta : {1.0, 2.0, 4.0, 8.0, 16.0}) {
        const auto s = s_alpha_field(field, beta);
        for (std::size_t i = 0; i < g.size(); ++i, ++checks)
          if (s[i] < prev[i]) fail("aperture monotonicity");
        for (std::size_t i = 0; i < g.size(); ++i) prev[i] = s[i];
      }

      const auto wide = operators(compute_alpha_field(f, big, cone), cfg.lambda);
      for (std::size_t o = 0; o < base.size(); ++o)
        for (std::size_t i = 0; i < g.size(); ++i, ++checks)
          if (wide[o][i] < base[o][i]) fail("bank monotonicity");

      // With t_max = L/4 the shifted A-field stays inside the box, so only
      // cells whose cones leave it are excluded.
      const auto pa = operators(compute_alpha_field(f, bank, short_cone), cfg.lambda);
      const auto pb = operators(compute_alpha_field(shifted(f, shift), bank, short_cone), cfg.lambda);
      for (std::size_t o = 0; o < pa.size(); ++o) {
        double top = 0.0;
        for (double v : pa[o].values) top = std::max(top, v);
        const double reach = (o == 1 ? 2.0 : 1.0) * short_cone.t_max;
        for (std::size_t i = 0; i < g.size(); ++i) {
          const auto c = g.coords(i);
          if (c[0] + shift >= g.points_per_axis()) continue;
          if (o < 2) {
            const double L = g.half_width();
            if (g.axis_center(c[0]) - reach < -L || g.axis_center(c[0] + shift) + reach > L) continue;
            if (dim == 2 && std::abs(g.axis_center(c[1])) + reach > L) continue;
          }
          ++checks;
          if (std::abs(pa[o][i] - pb[o][g.index(c[0] + shift, c[1])]) > 1e-12 * top) fail("translation equivariance");
        }
      }
    }
  }
  return {violations == 0, std::to_string(checks) + " cellwise checks over S, S_2, g, g* in n=1,2; " +
                               std::to_string(violations) + " violations" + (where.empty() ? "" : " (first: " + where + ")")};
}

Outcome weak_vs_strong() {
  long checks = 0, violations = 0;
  double worst = 0.0;
  for (int dim : {1, 2}) {
    const LabConfig cfg = config_for(dim);
    const Grid g = cfg.grid();
    const Corpus corpus = default_corpus(g, cfg.corpus_seed);
    const BallFamily fam = cfg.family();
    const KernelBank bank = cfg.bank();
    for (const auto& cf : corpus.functions) {
      const auto s = s_alpha_field(compute_alpha_field(cf.values, bank, cfg.cone()), 1.0);
      for (double a : corpus.weight_exponents) {
        const Weight w = build_power_weight(a, g);
        for (double p : {1.0, 2.0})
          for (double kappa : {0.25, 0.5, 0.75})
            for (const auto* f : {&cf.values, &s}) {
              const MorreyParams mp{p, kappa};
              const double weak = weak_morrey_norm(*f, mp, w, fam), strong = morrey_norm(*f, mp, w, fam);
              ++checks;
              if (weak > strong) ++violations;
              if (strong > 0) worst = std::max(worst, weak / strong);
            }
      }
    }
  }
  return {violations == 0, std::to_string(checks) + " (f, w, p, kappa) instances, " + std::to_string(violations) +
                               " with weak > strong; largest weak/strong " + g6(worst)};
}

Outcome cz_suite() {
  int pairs = 0, failed = 0;
  std::string first;
  for (int dim : {1, 2}) {
    const LabConfig cfg = config_for(dim);
    const Grid g = cfg.grid();
    const Corpus corpus = default_corpus(g, cfg.corpus_seed);
    Rng rng(derive_seed(2718, dim));
    for (int k = 0; k < 25; ++k) {
      const auto& f = corpus.functions[k % corpus.functions.size()].values;
      double avg = 0.0, l1 = 0.0;
      for (double v : f.values) avg += std::abs(v);
      l1 = avg * g.cell_volume();
      avg /= static_cast<double>(g.size());
      const double sigma = avg * std::exp2(rng.uniform(0.05, 6.0));
      const auto d = cz_decompose(f, sigma, root_cube(g));
      const auto rep = cz_verify(d, f, sigma);
      ++pairs;
      const bool ok = rep.all() && rep.total_cube_measure <= l1 / sigma * (1 + 1e-12);
      if (!ok) {
        ++failed;
        if (first.empty()) first = rep.failures.empty() ? "cube measure" : rep.failures.front();
      }
    }
  }
  return {failed == 0 && pairs == 50, std::to_string(pairs) + " seeded (f, sigma) pairs, " + std::to_string(failed) +
                                          " failing" + (first.empty() ? "" : " (" + first + ")")};
}

Outcome weight_suite() {
  bool ok = true;
  std::ostringstream d;
  for (int dim : {1, 2}) {
    const Grid g = config_for(dim).grid();
    const BallFamily fam = config_for(dim).family();
    const Weight one = build_power_weight(0.0, g);
    const auto rep = weight_lemma_report(one, 1.0, 2.0, 2.0, fam);
    const bool exact = rep.ap_characteristic == 1.0 && muckenhoupt_characteristic(one, 2.0, fam) == 1.0 &&
                       rep.doubling_constant == std::ldexp(1.0, dim);
    ok &= exact;
    d << "w=1 n=" << dim << " A=" << g6(rep.ap_characteristic) << " doubling=" << g6(rep.doubling_constant) << "; ";
  }

  const Grid fine = Grid::build(1, 1.0, 1024);
  std::vector<double> radii;
  for (double r = fine.spacing(); r <= 1.0 + 1e-12; r *= 2) radii.push_back(r);
  const double a1 = muckenhoupt_characteristic(build_power_weight(-0.5, fine), 1.0,
                                               BallFamily::centered(fine, {0.0, 0.0}, radii));
  ok &= std::abs(a1 - 2.0) <= 0.04;
  d << "A_1(|x|^-1/2, N=1024)=" << g6(a1) << "; ";

  std::vector<double> tails;
  for (double L : {8.0, 16.0, 32.0, 64.0})
    tails.push_back(tail_ratio(build_power_weight(0.0, Grid::build(1, L, static_cast<int>(32 * L))), 2.0, 1.0));
  for (std::size_t i = 1; i < tails.size(); ++i) ok &= std::abs(tails[i] - 1) < std::abs(tails[i - 1] - 1);
  ok &= std::abs(tails.back() - 1.0) <= 0.05;
  d << "tail ratio L=8..64: " << g6(tails[0]) << "," << g6(tails[1]) << "," << g6(tails[2]) << "," << g6(tails[3])
    << "; ";

  long bad = 0;
  for (int dim : {1, 2}) {
    const Grid g = config_for(dim).grid();
    const BallFamily fam = config_for(dim).family();
    for (double a : default_corpus(g, 11).weight_exponents) {
      const Weight w = build_power_weight(a, g);
      const double c = muckenhoupt_characteristic(w, 1.0, fam);
      const auto m = hl_maximal(w, fam);
      for (std::size_t i = 0; i < g.size(); ++i)
        if (m[i] > c * w.data[i] * (1 + 1e-12)) ++bad;
    }
  }
  ok &= bad == 0;
  d << "Mw > A_1 w at " << bad << " cells";
  return {ok, d.str()};
}

Outcome shell_bound() {
  long total = 0, cells = 0;
  double worst = 0.0;
  for (int dim : {1, 2}) {
    const LabConfig cfg = config_for(dim);
    const auto rep = run_experiment("INEQ6", default_corpus(cfg.grid(), cfg.corpus_seed), cfg);
    total += std::stol(rep.flag("violations"));
    cells += static_cast<long>(rep.instances.size() * cfg.grid().size());
    worst = std::max(worst, rep.max_ratio);
    if (rep.flag("shells_cover_box") != "true") ++total;
  }
  return {total == 0, std::to_string(cells) + " cells, " + std::to_string(total) +
                          " violations at 1e-9; largest g*/bound " + g6(worst)};
}

Outcome ratio_stability() {
  bool ok = true;
  std::ostringstream d;
  const LabConfig base = config_for(1);
  LabConfig coarse = base;
  coarse.points = base.points / 2;
  LabConfig few = base;
  few.bank_size = base.bank_size / 2;
  for (const char* id : {"T1.1", "T1.2", "C1.3", "T3.1", "T4.2", "L4.1"}) {
    const auto full = run_experiment(id, default_corpus(base.grid(), base.corpus_seed), base);
    const auto by_n = convergence_study(id, coarse, ConvergenceAxis::GridPoints, {128.0, 256.0});
    const auto by_bank = convergence_study(id, few, ConvergenceAxis::BankSize, {8.0, 16.0});
    const double dn = std::stod(by_n.flag("max_drift")), db = std::stod(by_bank.flag("max_drift"));
    const bool finite = std::isfinite(full.max_ratio) && full.max_ratio > 0.0 && full.skipped == 0;
    ok &= finite && dn <= 0.25 && db <= 0.25;
    d << id << " max=" << g6(full.max_ratio) << " dN=" << g6(dn) << " dbank=" << g6(db) << "; ";
  }
  // Drifts above compare N 128 -> 256 and bank 8 -> 16; add bank 16 -> 32.
  for (const char* id : {"T1.1", "T1.2", "C1.3", "T3.1", "T4.2", "L4.1"}) {
    const auto up = convergence_study(id, base, ConvergenceAxis::BankSize, {16.0, 32.0});
    const double db = std::stod(up.flag("max_drift"));
    ok &= db <= 0.25;
    d << id << " dbank32=" << g6(db) << "; ";
  }
  return {ok, d.str()};
}

Outcome shell_uniformity() {
  bool ok = true;
  std::ostringstream d;
  for (int dim : {1, 2}) {
    const LabConfig cfg = config_for(dim);
    const auto rep = run_experiment("L4.1", default_corpus(cfg.grid(), cfg.corpus_seed), cfg);
    std::vector<double> cj(cfg.apertures.size(), 0.0);
    for (const auto& r : rep.instances)
      for (std::size_t j = 0; j < cfg.apertures.size(); ++j)
        if (r.instance.ends_with("|beta=" + g6(cfg.apertures[j]))) cj[j] = std::max(cj[j], r.ratio);
    const double hi = *std::max_element(cj.begin(), cj.end()), lo = *std::min_element(cj.begin(), cj.end());
    ok &= lo > 0.0 && hi <= 2.0 * lo;
    d << "n=" << dim << " C_j=";
    for (double c : cj) d << g6(c) << " ";
    d << "spread " << g6(hi / lo) << "; ";
  }
  return {ok, d.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome reproducibility(const std::string& cli) {
  if (cli.empty()) return {false, "command-line binary path not given"};
  const fs::path dir = fs::temp_directory_path() / ("morreylab-accept-" + std::to_string(getpid()));
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "run.cfg");
    cfg << "experiments = T1.1, T1.2, INEQ6, CZ\noutput.format = json\n";
  }
  bool ok = true;
  std::ostringstream d;
  auto run = [&](const std::string& threads, const std::string& out) {
    const std::string cmd = "MORREYLAB_THREADS=" + threads + " '" + cli + "' check --config '" +
                            (dir / "run.cfg").string() + "' --output '" + (dir / out).string() + "' > /dev/null";
    return std::system(cmd.c_str()) == 0;
  };
  ok &= run("1", "a.json") && run("1", "b.json") && run("4", "c.json");
  int identical = 0, files = 0;
  for (const char* id : {"T1.1", "T1.2", "INEQ6", "CZ"}) {
    const std::string a = slurp(dir / ("a-" + std::string(id) + ".json"));
    const std::string b = slurp(dir / ("b-" + std::string(id) + ".json"));
    const std::string c = slurp(dir / ("c-" + std::string(id) + ".json"));
    ++files;
    if (!a.empty() && a == b && a == c) ++identical;
  }
  ok &= identical == files;
  d << identical << "/" << files << " reports byte-identical across two runs and MORREYLAB_THREADS=1,4";
  fs::remove_all(dir);
  return {ok, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  auto guarded = [](auto&& fn) {
    try {
      return fn();
    } catch (const std::exception& e) {
      return Outcome{false, std::string("error: ") + e.what()};
    }
  };
  report(1, "operator algebra", guarded(operator_algebra));
  report(2, "weak <= strong", guarded(weak_vs_strong));
  report(3, "CZ decomposition", guarded(cz_suite));
  report(4, "weights", guarded(weight_suite));
  report(5, "pointwise shell bound", guarded(shell_bound));
  report(6, "ratio stability", guarded(ratio_stability));
  report(7, "shell uniformity", guarded(shell_uniformity));
  report(8, "reproducibility", guarded([&] { return reproducibility(cli); }));
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
