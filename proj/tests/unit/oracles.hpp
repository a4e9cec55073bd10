#pragma once

// Brute-force reference implementations used by the unit and acceptance tests.
// They enumerate every coefficient of the pyramid and test membership directly
// instead of walking windows.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "wsmf/wavelet.hpp"

namespace oracle {

struct Field {
  int j_coarse = 0;
  std::vector<std::vector<double>> values;  // [level][position]
  std::vector<std::vector<std::uint8_t>> complete;
};

Field leaders(const wsmf::CoefficientPyramid& pyramid);
Field p_leaders(const wsmf::CoefficientPyramid& pyramid, double p);
// theta(j) = j + ceil(j^beta) (beta > 0) or j + theta_const; omega(j) = max(1, ceil(j^a)).
Field theta_omega(const wsmf::CoefficientPyramid& pyramid, double beta, int theta_const, double a);

int theta(int j, double beta, int theta_const);
std::int64_t omega(int j, double a);

// Log-cumulants of the raw wavelet coefficients of an MRW ensemble:
// c1 = -slope(E ln|c_j|) / ln 2 and c2 = slope(Var ln|c_j|) / ln 2 over j in
// [j1, j2], averaged over `count` realizations seeded first, first + 1, ...
struct LogCumulants {
  double c1 = 0.0;
  double c2 = 0.0;
};
LogCumulants mrw_log_cumulants(double hurst, double lambda, std::size_t length, std::uint64_t first_seed,
                               int count, int j1, int j2);

// Frozen output of mrw_log_cumulants(0.6, 0.3, 2^17, 1000, 50, 6, 14), the
// parabola the MRW spectra are compared against. Recomputed by the synth suite.
inline constexpr double kMrwC1 = 0.6602;
inline constexpr double kMrwC2 = 0.0672;

// Random pyramid with 2..max_levels levels, random interior prefixes, and a
// mix of zeros, ties and spread-out magnitudes.
wsmf::CoefficientPyramid random_pyramid(std::mt19937_64& rng, int max_levels);

}  // namespace oracle
