#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <variant>
#include <vector>

#include "wsmf/wavelet.hpp"

namespace wsmf {

using Rng = std::mt19937_64;

struct FbmModel {
  double hurst = 0.5;  // (0, 1)
};

// Fractional Gaussian noise with negative exponent alpha in (-1, 0): the
// increments of fBm with Hurst exponent alpha + 1.
struct FgnModel {
  double alpha = -0.5;
};

// One atom of a random wavelet series law: at scale j a coefficient has
// magnitude 2^{-alpha j} with probability 2^{(eta - 1) j}.
struct RwsAtom {
  double alpha = 0.0;
  double eta = 1.0;
};

// Random wavelet series built directly in the wavelet domain. Either a list of
// atoms, or a custom law returning a coefficient for scale j. Every
// coefficient must satisfy |c_{j,k}| <= 2^{-A j} with A = uniform_bound.
struct RwsModel {
  std::vector<RwsAtom> atoms;
  std::function<double(int j, Rng& rng)> law;
  double uniform_bound = 0.0;
  int j_coarse = 1;
};

struct LacunaryModel {
  double alpha = 0.5;
  double eta = 0.5;
  int j_coarse = 1;
};

// Multifractal random walk: fGn(H) increments modulated by exp(omega) where
// omega is log-correlated with covariance lambda^2 ln(L / (|k| + 1)), L = N.
struct MrwModel {
  double hurst = 0.5;
  double lambda = 0.3;
};

using Model = std::variant<FbmModel, FgnModel, RwsModel, LacunaryModel, MrwModel>;

struct SynthesisConfig {
  Model model = FbmModel{};
  std::size_t length = std::size_t{1} << 14;
  std::uint64_t seed = 0;
};

// Exact-covariance fGn(H) increments of the given length (circulant embedding).
std::vector<double> fgn_increments(double hurst, std::size_t n, Rng& rng);

Signal gen_fbm(const SynthesisConfig& config);
Signal gen_fgn(const SynthesisConfig& config);
// Accepts RwsModel or LacunaryModel. Level j holds 2^j coefficients for
// j_coarse <= j <= log2(N) - 1, all interior.
CoefficientPyramid gen_rws(const SynthesisConfig& config);
Signal gen_mrw(const SynthesisConfig& config);

// Dispatches on the model; random wavelet series are reconstructed with spec.
Signal synthesize(const SynthesisConfig& config, const WaveletSpec& spec);

// MRW scaling parabola zeta(q) = c1 q - c2 q^2 / 2.
struct Parabola {
  double c1 = 0.0;
  double c2 = 0.0;
};
Parabola mrw_parabola(const MrwModel& model);

}  // namespace wsmf
