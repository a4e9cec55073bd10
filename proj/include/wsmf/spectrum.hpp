#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wsmf/multiscale.hpp"
#include "wsmf/scaling.hpp"
#include "wsmf/synth.hpp"

namespace wsmf {

enum class QRestriction { PositiveOnly, AllQ };

inline constexpr double kDefaultSpectrumFloor = -0.5;
inline constexpr std::size_t kDefaultHGridSize = 512;

// Sampled (H, D(H)). D is -infinity where the transform falls below the floor.
struct LegendreSpectrum {
  std::vector<double> h;
  std::vector<double> d;
  FieldKind source = FieldKind::Coefficients;
  double q_min = 0.0;
  double q_max = 0.0;
  double mode_h = 0.0;

  double max_d() const;
  // Half the distance between the two crossings of D = level around the
  // mode, linearly interpolated; NaN when a crossing is missing.
  double half_width(double level = 0.5) const;
};

// Points spanning [min local slope - 0.5, max local slope + 0.5] of zeta.
std::vector<double> default_h_grid(std::span<const double> q, std::span<const double> zeta,
                                   std::size_t n = kDefaultHGridSize);
std::vector<double> default_h_grid(const ScalingFunction& zeta, std::size_t n = kDefaultHGridSize);

// L(H) = min_q (1 + H q - zeta(q)) over the q grid (q > 0 only for PositiveOnly).
LegendreSpectrum legendre_transform(std::span<const double> q, std::span<const double> zeta,
                                    std::span<const double> h_grid, QRestriction restriction,
                                    double floor = kDefaultSpectrumFloor);

// Same, rejecting AllQ on raw-coefficient scaling functions.
LegendreSpectrum legendre_transform(const ScalingFunction& zeta, std::span<const double> h_grid,
                                    QRestriction restriction, double floor = kDefaultSpectrumFloor);

// theta-omega leaders -> structure functions -> scaling function -> Legendre (AllQ).
// An empty h_grid selects default_h_grid.
LegendreSpectrum ws_spectrum_pipeline(const CoefficientPyramid& pyramid, const GrowthPair& growth,
                                      const MomentGrid& grid, int j1, int j2,
                                      std::span<const double> h_grid = {});

struct LargeDeviationSpectrum {
  std::vector<double> alpha;
  std::vector<double> rho;  // -infinity for bins empty at every scale
  double epsilon = 0.0;
  bool includes_infinity_bin = false;
  double rho_infinity = 0.0;
  int j1 = 0;
  int j2 = 0;

  // rho at the bin whose centre equals alpha (within 1e-12).
  double at(double alpha_value) const;
};

// Histogram of X_{j,k} = -log2|c_{j,k}| / j per scale; rho(alpha) is the slope
// of log2(2^j rho_j([alpha - eps, alpha + eps])) against j over [j1, j2].
// An empty alpha grid selects centres spaced by epsilon over the observed range.
// j1 = j2 = 0 selects every level of the pyramid.
LargeDeviationSpectrum rws_large_deviation(const CoefficientPyramid& pyramid, double epsilon,
                                           std::span<const double> alpha_grid = {}, int j1 = 0, int j2 = 0);

enum class Formalism { WeakScaling, PExponent };

// Closed-form reference spectrum of a synthetic model, used as a test oracle.
// p is only read for Formalism::PExponent.
LegendreSpectrum theoretical_spectrum(const SynthesisConfig& config, Formalism formalism,
                                      std::span<const double> h_grid, double p = 2.0);

}  // namespace wsmf
