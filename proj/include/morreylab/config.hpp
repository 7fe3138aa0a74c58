#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "morreylab/corpus.hpp"
#include "morreylab/lab.hpp"
#include "morreylab/report.hpp"

namespace morreylab {

/// Everything a command-line run can set. The file format is one
/// `key = value` per line with dotted keys; `#` starts a comment; lists are
/// comma separated. Every key has a default, so an empty file is valid.
struct RunConfig {
  LabConfig lab;
  std::vector<std::string> experiments{"T1.1"};
  std::string output_path = "report.csv";
  ReportFormat output_format = ReportFormat::Csv;

  std::uint64_t search_seed = 1;
  int search_budget = 20;
  SearchFamily search_family;

  std::string converge_axis = "N";
  std::vector<double> converge_values;  // empty: derived from the axis

  std::vector<double> weight_exponents;  // empty: the corpus weights
  double weights_p = 1.0;
  double weights_r = 2.0;
  double weights_q = 2.0;

  void validate() const;
};

struct ConfigKey {
  const char* key;
  const char* default_value;
  const char* meaning;
};

const std::vector<ConfigKey>& config_keys();

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Axis values used when the config lists none.
std::vector<double> default_axis_values(const RunConfig& config, ConvergenceAxis axis);

}  // namespace morreylab
