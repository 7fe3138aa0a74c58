#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "morreylab/corpus.hpp"
#include "morreylab/grid.hpp"
#include "morreylab/kernel_bank.hpp"
#include "morreylab/spaces.hpp"
#include "morreylab/sqfn.hpp"
#include "morreylab/weights.hpp"

namespace morreylab {

/// Every free parameter of an experiment. Zero-valued entries marked "auto"
/// are derived from the grid.
struct LabConfig {
  int dim = 1;
  double half_width = 1.0;
  int points = 256;

  double alpha = 1.0;
  int bank_size = 16;
  std::uint64_t bank_seed = 7;

  double t_min = 0.0;  // auto: 2h
  double t_max = 0.0;  // auto: L/2
  int scales_per_octave = 4;
  std::vector<double> apertures{2.0, 4.0, 8.0, 16.0};

  double p = 1.0;
  double kappa = 0.5;

  double lambda = 6.0;
  int shells = 0;  // auto: cover the box

  int stride = 0;  // auto: N/16
  int k_min = 0;
  int k_max = -1;  // auto: h 2^k <= L/2

  std::uint64_t corpus_seed = 11;
  int cz_heights = 4;  // seeded heights per corpus function

  void validate() const;
  Grid grid() const;
  ConeSpec cone() const;
  GStarSpec gstar() const;
  BallFamily family() const;
  KernelBank bank() const;
  MorreyParams morrey() const { return MorreyParams{p, kappa}; }
};

/// Grid the bank's discrete mean is pinned on: the unit ball at h = 1/32.
Grid bank_reference_grid(int dim);

const std::vector<std::string>& experiment_ids();

struct InstanceResult {
  std::string instance;
  std::string weight;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool skipped = false;
  std::string flags;

  bool operator==(const InstanceResult&) const = default;
};

struct Provenance {
  int dim = 1;
  double half_width = 1.0;
  int points = 0;
  double alpha = 1.0;
  int bank_size = 0;
  std::uint64_t bank_seed = 0;
  int bank_reference_points = 0;
  std::vector<std::vector<double>> bank_parameters;  // u1, r1, u2, r2, c1, c2 per member
  std::vector<double> apertures;
  double t_min = 0.0;
  double t_max = 0.0;
  int scales_per_octave = 0;
  int stride = 0;
  int k_min = 0;
  int k_max = 0;
  double p = 1.0;
  double kappa = 0.5;
  double lambda = 0.0;
  int shells = 0;
  std::uint64_t corpus_seed = 0;

  bool operator==(const Provenance&) const = default;
};

Provenance make_provenance(const LabConfig& config);

struct ExperimentReport {
  std::string experiment;
  std::vector<InstanceResult> instances;
  double max_ratio = 0.0;
  int skipped = 0;
  Provenance provenance;
  std::vector<std::pair<std::string, std::string>> flags;

  std::string flag(const std::string& key) const;
  bool operator==(const ExperimentReport&) const = default;
};

ExperimentReport run_experiment(const std::string& id, const Corpus& corpus, const LabConfig& config);

struct SearchFamily {
  std::vector<FunctionKind> kinds{FunctionKind::BumpPair};
  bool vary_weight = true;
  bool vary_kappa = true;
};

ExperimentReport adversarial_search(const std::string& id, const SearchFamily& family, int budget,
                                    std::uint64_t seed, const LabConfig& config);

enum class ConvergenceAxis { GridPoints, BankSize, ScalesPerOctave, TRange, Shells, FamilyStride };

ConvergenceAxis convergence_axis_from_string(const std::string& name);
std::string to_string(ConvergenceAxis axis);

/// Config with one axis moved to the given value. TRange adds `value`
/// octaves below t_min and above t_max.
LabConfig with_axis(const LabConfig& config, ConvergenceAxis axis, double value);

using CorpusFactory = std::function<Corpus(const Grid&)>;

ExperimentReport convergence_study(const std::string& id, const LabConfig& config, ConvergenceAxis axis,
                                   const std::vector<double>& values, const CorpusFactory& corpus = {});

}  // namespace morreylab
