#include "morreylab/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "morreylab/rng.hpp"

namespace morreylab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& key, const std::string& why) {
  throw Error("config key '" + key + "': " + why);
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out))
    bad(key, "expected a number, got '" + v + "'");
  return out;
}

long long to_int(const std::string& key, const std::string& v) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) bad(key, "expected an integer, got '" + v + "'");
  return out;
}

int to_small_int(const std::string& key, const std::string& v) {
  const long long x = to_int(key, v);
  if (x < -1000000 || x > 1000000) bad(key, "value out of range");
  return static_cast<int>(x);
}

std::uint64_t to_seed(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) bad(key, "expected a nonnegative integer, got '" + v + "'");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad(key, "expected true or false, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> to_doubles(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const auto& item : split_list(v)) out.push_back(to_double(key, item));
  if (out.empty()) bad(key, "expected a comma separated list of numbers");
  return out;
}

}  // namespace

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys{
      {"grid.dim", "1", "dimension n (1 or 2)"},
      {"grid.half_width", "1", "box half width L; the box is [-L, L]^n"},
      {"grid.points", "256", "cells per axis N (power of two, >= 8)"},
      {"bank.alpha", "1", "Hoelder exponent alpha in (0, 1]"},
      {"bank.size", "16", "number of kernels in the bank"},
      {"bank.seed", "7", "bank seed"},
      {"cone.t_min", "auto (2h)", "smallest scale"},
      {"cone.t_max", "auto (L/2)", "largest scale"},
      {"cone.scales_per_octave", "4", "ladder nodes per octave m"},
      {"cone.apertures", "2,4,8,16", "wide apertures for L4.1"},
      {"morrey.p", "1", "Morrey exponent p"},
      {"morrey.kappa", "0.5", "Morrey exponent kappa in (0, 1)"},
      {"gstar.lambda", "6", "g* damping exponent lambda"},
      {"gstar.shells", "auto (cover the box)", "shell count J for the pointwise shell bound"},
      {"family.stride", "auto (N/16)", "ball center spacing in cells"},
      {"family.k_min", "0", "smallest radius h 2^k_min"},
      {"family.k_max", "auto (h 2^k <= L/2)", "largest radius h 2^k_max"},
      {"corpus.seed", "11", "corpus seed (CZ heights)"},
      {"cz.heights", "4", "seeded CZ heights per corpus function"},
      {"seed", "unset", "master seed; when set, derives bank, corpus and search seeds not given explicitly"},
      {"experiments", "T1.1", "experiments run by `check` without --experiment"},
      {"output.path", "report.csv", "report path"},
      {"output.format", "csv", "csv or json"},
      {"search.budget", "20", "evaluations for `search`"},
      {"search.seed", "1", "search seed"},
      {"search.kinds", "pair", "function kinds searched (bump, pair, indicator, oscillating)"},
      {"search.vary_weight", "true", "perturb the weight exponent"},
      {"search.vary_kappa", "true", "perturb kappa"},
      {"converge.axis", "N", "N, bank, m, t_range, J or stride"},
      {"converge.values", "auto", "axis values, strictly monotone"},
      {"weights.exponents", "auto (corpus weights)", "power weight exponents for `weights-report`"},
      {"weights.p", "1", "Muckenhoupt exponent p"},
      {"weights.r", "2", "reverse Hoelder exponent r"},
      {"weights.q", "2", "tail exponent q"},
  };
  return keys;
}

void RunConfig::validate() const {
  lab.validate();
  for (const auto& id : experiments) {
    const auto& ids = experiment_ids();
    if (std::find(ids.begin(), ids.end(), id) == ids.end())
      throw Error("config key 'experiments': unknown experiment '" + id + "'");
  }
  if (experiments.empty()) throw Error("config key 'experiments': list is empty");
  if (search_budget < 1) throw Error("config key 'search.budget': must be >= 1");
  if (search_family.kinds.empty()) throw Error("config key 'search.kinds': list is empty");
  if (!(weights_p >= 1.0)) throw Error("config key 'weights.p': must be >= 1");
  if (!(weights_r > 1.0)) throw Error("config key 'weights.r': must be > 1");
  if (!(weights_q > 1.0)) throw Error("config key 'weights.q': must be > 1");
  for (double a : weight_exponents)
    if (!(a > -lab.dim)) throw Error("config key 'weights.exponents': exponents must exceed -n");
}

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::map<std::string, std::string> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error("config line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto& keys = config_keys();
    if (std::none_of(keys.begin(), keys.end(), [&](const ConfigKey& k) { return key == k.key; }))
      throw Error("unknown config key '" + key + "'");
    if (seen.count(key)) bad(key, "given twice");
    if (value.empty()) bad(key, "missing value");
    seen[key] = value;
  }

  auto& lab = c.lab;
  for (const auto& [key, v] : seen) {
    if (key == "grid.dim") lab.dim = to_small_int(key, v);
    else if (key == "grid.half_width") lab.half_width = to_double(key, v);
    else if (key == "grid.points") lab.points = to_small_int(key, v);
    else if (key == "bank.alpha") lab.alpha = to_double(key, v);
    else if (key == "bank.size") lab.bank_size = to_small_int(key, v);
    else if (key == "bank.seed") lab.bank_seed = to_seed(key, v);
    else if (key == "cone.t_min") lab.t_min = to_double(key, v);
    else if (key == "cone.t_max") lab.t_max = to_double(key, v);
    else if (key == "cone.scales_per_octave") lab.scales_per_octave = to_small_int(key, v);
    else if (key == "cone.apertures") lab.apertures = to_doubles(key, v);
    else if (key == "morrey.p") lab.p = to_double(key, v);
    else if (key == "morrey.kappa") lab.kappa = to_double(key, v);
    else if (key == "gstar.lambda") lab.lambda = to_double(key, v);
    else if (key == "gstar.shells") lab.shells = to_small_int(key, v);
    else if (key == "family.stride") lab.stride = to_small_int(key, v);
    else if (key == "family.k_min") lab.k_min = to_small_int(key, v);
    else if (key == "family.k_max") lab.k_max = to_small_int(key, v);
    else if (key == "corpus.seed") lab.corpus_seed = to_seed(key, v);
    else if (key == "cz.heights") lab.cz_heights = to_small_int(key, v);
    else if (key == "experiments") c.experiments = split_list(v);
    else if (key == "output.path") c.output_path = v;
    else if (key == "output.format") {
      try {
        c.output_format = report_format_from_string(v);
      } catch (const Error& e) {
        bad(key, e.what());
      }
    } else if (key == "search.budget") c.search_budget = to_small_int(key, v);
    else if (key == "search.seed") c.search_seed = to_seed(key, v);
    else if (key == "search.kinds") {
      c.search_family.kinds.clear();
      try {
        for (const auto& k : split_list(v)) c.search_family.kinds.push_back(function_kind_from_string(k));
      } catch (const Error& e) {
        bad(key, e.what());
      }
    } else if (key == "search.vary_weight") c.search_family.vary_weight = to_bool(key, v);
    else if (key == "search.vary_kappa") c.search_family.vary_kappa = to_bool(key, v);
    else if (key == "converge.axis") {
      try {
        convergence_axis_from_string(v);
      } catch (const Error& e) {
        bad(key, e.what());
      }
      c.converge_axis = v;
    } else if (key == "converge.values") c.converge_values = to_doubles(key, v);
    else if (key == "weights.exponents") c.weight_exponents = to_doubles(key, v);
    else if (key == "weights.p") c.weights_p = to_double(key, v);
    else if (key == "weights.r") c.weights_r = to_double(key, v);
    else if (key == "weights.q") c.weights_q = to_double(key, v);
  }

  if (seen.count("seed")) {
    const std::uint64_t master = to_seed("seed", seen["seed"]);
    if (!seen.count("bank.seed")) lab.bank_seed = derive_seed(master, 0);
    if (!seen.count("corpus.seed")) lab.corpus_seed = derive_seed(master, 1);
    if (!seen.count("search.seed")) c.search_seed = derive_seed(master, 2);
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::vector<double> default_axis_values(const RunConfig& config, ConvergenceAxis axis) {
  const LabConfig& lab = config.lab;
  switch (axis) {
    case ConvergenceAxis::GridPoints:
      return {std::max(8.0, lab.points / 4.0), std::max(16.0, lab.points / 2.0), static_cast<double>(lab.points)};
    case ConvergenceAxis::BankSize:
      return {std::max(1.0, lab.bank_size / 2.0), static_cast<double>(lab.bank_size), 2.0 * lab.bank_size};
    case ConvergenceAxis::ScalesPerOctave: return {2.0, 4.0, 8.0};
    case ConvergenceAxis::TRange: return {0.0, 1.0};
    case ConvergenceAxis::Shells: {
      const int cover = covering_shells(lab.grid(), lab.cone());
      std::vector<double> v;
      for (int j = 1; j <= cover; ++j) v.push_back(j);
      if (v.size() < 2) v.push_back(cover + 1);
      return v;
    }
    case ConvergenceAxis::FamilyStride: {
      const double s = lab.stride > 0 ? lab.stride : default_stride(lab.grid());
      std::vector<double> v{2.0 * s, s};
      if (s >= 2.0) v.push_back(std::floor(s / 2.0));
      return v;
    }
  }
  return {};
}

}  // namespace morreylab
