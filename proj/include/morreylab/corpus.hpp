#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "morreylab/grid.hpp"

namespace morreylab {

enum class FunctionKind { Zero, Bump, BumpPair, Indicator, Oscillating };

std::string to_string(FunctionKind kind);
FunctionKind function_kind_from_string(const std::string& name);

/// Closed-form test function. Parameters are in units of the box half width L:
///   Bump        [cx, cy, width, amplitude]
///   BumpPair    [c1x, c1y, width1, c2x, c2y, width2]   (+bump1 - bump2)
///   Indicator   [cx, cy, radius]
///   Oscillating [cx, cy, width, cycles per L]           (bump * cos)
struct FunctionSpec {
  FunctionKind kind = FunctionKind::Zero;
  std::vector<double> params;

  std::string descriptor() const;
  /// Pulls centers and widths back so the support stays in the half box.
  FunctionSpec clamped(int dim, double min_width) const;
  SampledFunction realize(const Grid& grid) const;
};

struct CorpusFunction {
  FunctionSpec spec;
  SampledFunction values;
};

struct Corpus {
  Grid grid;
  std::vector<CorpusFunction> functions;
  std::vector<double> weight_exponents;  // power weights |x|^a
  std::uint64_t seed = 0;

  void validate() const;
};

/// 12 functions (3 bumps, 3 opposite-sign bump pairs, 3 indicators,
/// 3 oscillating bumps) and power weights a in {0, -n/4, -n/2}.
Corpus default_corpus(const Grid& grid, std::uint64_t seed);

Corpus corpus_from_specs(const Grid& grid, const std::vector<FunctionSpec>& specs,
                         std::vector<double> weight_exponents, std::uint64_t seed);

/// Minimum width for generated functions: four cells.
double minimum_width(const Grid& grid);

}  // namespace morreylab
