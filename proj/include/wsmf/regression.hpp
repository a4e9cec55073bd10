#pragma once

#include <span>

namespace wsmf {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// Weighted least-squares fit y = slope * x + intercept. Weights must be
// non-negative with at least two distinct x carrying positive weight.
LinearFit weighted_linear_fit(std::span<const double> x, std::span<const double> y, std::span<const double> w);

LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

}  // namespace wsmf
