#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "wsmf/wavelet.hpp"

namespace wsmf {

// Per-level partition of the interior coefficients into a small set K_j (the
// longest ascending-magnitude prefix whose q-th power sum fits C 2^j / j^{2q})
// and the large remainder L_j.
struct SparsityLevel {
  int j = 0;
  std::size_t total = 0;   // M_j
  std::size_t small = 0;   // N_j
  double budget = 0.0;
  double small_sum = 0.0;  // sum over K_j of |c|^q
  std::vector<std::size_t> small_set;  // positions, ascending
  std::vector<std::size_t> large_set;
};

struct SparsitySplit {
  double q = 2.0;
  double c = 1.0;
  std::vector<SparsityLevel> levels;
  // Slope of log2(M_j - N_j) against j; -infinity when every level is absorbed.
  double delta = 0.0;
  int fit_levels = 0;
};

// j_lo = j_hi = 0 selects every level of the pyramid; delta is fitted over the
// selected levels.
SparsitySplit sparsity_split(const CoefficientPyramid& pyramid, double q = 2.0, double c = 1.0, int j_lo = 0,
                             int j_hi = 0);

// Coefficients restricted to K_j (small) or to everything else (large). Boundary
// coefficients and levels outside the split stay with the large part, so the
// two pyramids always sum to the original.
CoefficientPyramid restrict_to_small(const CoefficientPyramid& pyramid, const SparsitySplit& split);
CoefficientPyramid restrict_to_large(const CoefficientPyramid& pyramid, const SparsitySplit& split);

// Largest admissible p: (1 - delta) / (-hmin) when hmin < 0, none when hmin >= 0.
std::optional<double> admissible_p_bound(double delta, double hmin);

}  // namespace wsmf
