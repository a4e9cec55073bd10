#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "wsmf/multiscale.hpp"
#include "wsmf/wavelet.hpp"

namespace wsmf {

struct MomentGrid {
  std::vector<double> q;

  static MomentGrid linspace(double lo, double hi, std::size_t n);
  static MomentGrid from(std::vector<double> values);  // sorts, rejects non-finite
};

// S(j, q) = mean over retained positions of value^q, for every valid scale of
// the field. Positions are the complete ones of each level; at q < 0 exact
// zeros are dropped from the mean and counted. Levels with more than 1% zeros
// are flagged unreliable for q < 0. An entry with no usable position (or a
// zero sum at q > 0) is undefined, never silently zero.
struct StructureFunctions {
  FieldKind kind = FieldKind::Coefficients;
  std::vector<int> scales;
  std::vector<double> q;
  std::vector<std::size_t> counts;          // retained positions per scale
  std::vector<std::size_t> zero_counts;     // exact zeros per scale
  std::vector<std::uint8_t> unreliable_negative_q;
  std::vector<std::vector<double>> values;  // [scale][q]
  std::vector<std::vector<double>> log2_values;
  std::vector<std::vector<std::uint8_t>> defined;

  std::size_t scale_index(int j) const;
};

StructureFunctions structure_functions(const MultiscaleField& field, const MomentGrid& grid);

// zeta(q) = slope of log2 S(j, q) against -j over [j1, j2], weighted least
// squares with weights = retained positions per scale.
struct ScalingFunction {
  FieldKind kind = FieldKind::Coefficients;
  int j1 = 0;
  int j2 = 0;
  std::vector<double> q;
  std::vector<double> zeta;
  std::vector<double> intercept;
  std::vector<double> r_squared;
  std::vector<double> weights;  // per scale j1..j2

  std::optional<double> at(double q_value) const;
};

ScalingFunction scaling_function(const StructureFunctions& sf, int j1, int j2);

// Slope of log2(sup_k |c_{j,k}|) against -j over [j1, j2], uniform weights.
double estimate_hmin(const CoefficientPyramid& pyramid, int j1, int j2);

struct Admissibility {
  bool exists_positive = false;
  std::optional<double> best_p;
  double slope_at_zero = 0.0;
};

// Whether some p > 0 on the grid has zeta(p) > 0, i.e. whether a p-leader
// analysis is possible without fractional integration.
Admissibility p_admissibility(const ScalingFunction& zeta);

}  // namespace wsmf
