#include "morreylab/cli.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "morreylab/config.hpp"
#include "morreylab/report.hpp"

namespace morreylab {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

RunConfig config_from(const std::string& path) { return path.empty() ? parse_config("") : load_config(path); }

// With several experiments each report gets the id spliced in before the extension.
std::string output_for(const RunConfig& c, const std::string& id, bool several) {
  if (!several) return c.output_path;
  const auto slash = c.output_path.find_last_of('/');
  const auto dot = c.output_path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return c.output_path + "-" + id;
  return c.output_path.substr(0, dot) + "-" + id + c.output_path.substr(dot);
}

void summarize(std::ostream& out, const ExperimentReport& rep, const std::string& path) {
  out << rep.experiment << ": instances=" << rep.instances.size() << " skipped=" << rep.skipped
      << " max_ratio=" << fmt("%.6g", rep.max_ratio);
  for (const auto& [k, v] : rep.flags)
    if (v.size() < 40) out << ' ' << k << '=' << v;
  out << " -> " << path << '\n';
}

int bank_table(const RunConfig& c, std::ostream& out) {
  const Grid ref = bank_reference_grid(c.lab.dim);
  const KernelBank bank = c.lab.bank();
  out << "member  support_excess  discrete_mean  holder_quotient  status\n";
  bool all = true;
  for (std::size_t i = 0; i < bank.size(); ++i) {
    const auto r = admissibility_report(bank.members[i], ref);
    all &= r.all();
    out << fmt("%6.0f", static_cast<double>(i)) << "  " << fmt("%14.3e", r.support_excess) << "  "
        << fmt("%13.3e", r.discrete_mean) << "  " << fmt("%15.6f", r.holder_quotient) << "  "
        << (r.all() ? "ok" : "FAIL") << '\n';
  }
  out << (all ? "all members admissible\n" : "some members are not admissible\n");
  return all ? 0 : 1;
}

int weights_table(const RunConfig& c, std::ostream& out) {
  const Grid g = c.lab.grid();
  const BallFamily fam = c.lab.family();
  std::vector<double> exps = c.weight_exponents;
  if (exps.empty()) exps = {0.0, -g.dim() / 4.0, -g.dim() / 2.0};
  out << "exponent  A_p(p=" << fmt("%g", c.weights_p) << ")  RH_r(r=" << fmt("%g", c.weights_r)
      << ")  doubling  subset  tail(q=" << fmt("%g", c.weights_q) << ")  skipped\n";
  for (double a : exps) {
    const Weight w = build_power_weight(a, g);
    const auto r = weight_lemma_report(w, c.weights_p, c.weights_r, c.weights_q, fam, c.lab.corpus_seed);
    out << fmt("%8.4g", a) << "  " << fmt("%10.6g", r.ap_characteristic) << (r.ap_divergent ? " (divergent)" : "")
        << "  " << fmt("%10.6g", r.rh_constant) << (r.rh_divergent ? " (divergent)" : "") << "  "
        << fmt("%8.5g", r.doubling_constant) << "  " << fmt("%6.4g", r.subset_constant) << "  "
        << fmt("%8.5g", r.tail_ratio) << "  " << r.skipped_geometries << '\n';
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical lab for intrinsic square functions on weighted Morrey spaces", "morreylab"};
  app.require_subcommand(1);

  std::string config_path, experiment, output, format, axis, values;
  int budget = 0;
  std::uint64_t seed = 0;

  auto* check = app.add_subcommand("check", "run experiments and write a report");
  check->add_option("--experiment", experiment, "experiment id (default: config 'experiments')");
  check->add_option("--config", config_path, "config file");
  check->add_option("--output", output, "report path (overrides output.path)");
  check->add_option("--format", format, "csv or json (overrides output.format)");

  auto* search = app.add_subcommand("search", "adversarial search for the worst ratio");
  search->add_option("--experiment", experiment, "experiment id")->required();
  search->add_option("--budget", budget, "number of evaluations");
  search->add_option("--seed", seed, "search seed");
  search->add_option("--config", config_path, "config file");
  search->add_option("--output", output, "report path");
  search->add_option("--format", format, "csv or json");

  auto* converge = app.add_subcommand("converge", "max-ratio drift along one discretization axis");
  converge->add_option("--experiment", experiment, "experiment id")->required();
  converge->add_option("--axis", axis, "N, bank, m, t_range, J or stride");
  converge->add_option("--values", values, "comma separated axis values");
  converge->add_option("--config", config_path, "config file");
  converge->add_option("--output", output, "report path");
  converge->add_option("--format", format, "csv or json");

  auto* bank = app.add_subcommand("validate-bank", "admissibility table of the kernel bank");
  bank->add_option("--config", config_path, "config file");

  auto* weights = app.add_subcommand("weights-report", "A_p, reverse Hoelder, doubling and tail table");
  weights->add_option("--config", config_path, "config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    RunConfig c = config_from(config_path);
    if (!output.empty()) c.output_path = output;
    if (!format.empty()) c.output_format = report_format_from_string(format);

    if (check->parsed()) {
      std::vector<std::string> ids = c.experiments;
      if (!experiment.empty()) ids = {experiment};
      const auto& known = experiment_ids();
      for (const auto& id : ids)
        if (std::find(known.begin(), known.end(), id) == known.end()) throw Error("unknown experiment '" + id + "'");
      const Grid g = c.lab.grid();
      const Corpus corpus = default_corpus(g, c.lab.corpus_seed);
      for (const auto& id : ids) {
        const auto rep = run_experiment(id, corpus, c.lab);
        const std::string path = output_for(c, id, ids.size() > 1);
        write_report(rep, path, c.output_format);
        summarize(out, rep, path);
      }
      return 0;
    }
    if (search->parsed()) {
      if (budget == 0) budget = c.search_budget;
      if (search->count("--seed") == 0) seed = c.search_seed;
      const auto rep = adversarial_search(experiment, c.search_family, budget, seed, c.lab);
      write_report(rep, c.output_path, c.output_format);
      summarize(out, rep, c.output_path);
      out << "best instance: " << rep.flag("best_instance") << '\n';
      return 0;
    }
    if (converge->parsed()) {
      const ConvergenceAxis ax = convergence_axis_from_string(axis.empty() ? c.converge_axis : axis);
      std::vector<double> vals = c.converge_values;
      if (!values.empty()) {
        vals.clear();
        std::stringstream ss(values);
        std::string item;
        while (std::getline(ss, item, ',')) vals.push_back(std::stod(item));
      }
      if (vals.empty()) vals = default_axis_values(c, ax);
      const auto rep = convergence_study(experiment, c.lab, ax, vals);
      write_report(rep, c.output_path, c.output_format);
      summarize(out, rep, c.output_path);
      for (const auto& r : rep.instances)
        out << "  " << r.instance << "  max_ratio=" << fmt("%.6g", r.ratio) << "  " << r.flags << '\n';
      return 0;
    }
    if (bank->parsed()) return bank_table(c, out);
    if (weights->parsed()) return weights_table(c, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace morreylab
