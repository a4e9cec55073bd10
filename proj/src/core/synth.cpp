#include "wsmf/synth.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <string>

#include "fft.hpp"
#include "wsmf/error.hpp"

namespace wsmf {
namespace {

constexpr std::size_t kMinLength = std::size_t{1} << 10;

void check_length(std::size_t n) {
  if (n < kMinLength || !std::has_single_bit(n)) {
    throw Error(Errc::ParamOutOfRange, "length must be a power of two >= 1024, got " + std::to_string(n));
  }
}

// Stationary Gaussian sequence with autocovariance cov(|k|) by circulant
// embedding. The embedding is doubled once if it is not positive semidefinite.
template <typename Cov>
std::vector<double> circulant_gaussian(Cov&& cov, std::size_t n, Rng& rng) {
  std::size_t m = std::bit_ceil(n);
  for (int attempt = 0; attempt < 2; ++attempt, m *= 2) {
    const std::size_t big = 2 * m;
    std::vector<std::complex<double>> row(big);
    for (std::size_t k = 0; k < big; ++k) row[k] = cov(std::min(k, big - k));
    detail::forward_dft(row);
    double top = 0.0;
    double bottom = 0.0;
    for (const auto& v : row) {
      top = std::max(top, v.real());
      bottom = std::min(bottom, v.real());
    }
    if (bottom < -1e-9 * top) continue;

    std::normal_distribution<double> normal;
    std::vector<std::complex<double>> w(big);
    for (std::size_t k = 0; k < big; ++k) {
      const double scale = std::sqrt(std::max(row[k].real(), 0.0) / static_cast<double>(big));
      const double re = normal(rng);
      const double im = normal(rng);
      w[k] = {scale * re, scale * im};
    }
    detail::forward_dft(w);
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = w[k].real();
    return out;
  }
  throw Error(Errc::EmbeddingNotPSD, "circulant embedding is not positive semidefinite");
}

std::vector<double> cumulative_sum(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    acc += v[i];
    out[i] = acc;
  }
  return out;
}

void check_hurst(double h) {
  if (!(h > 0.0 && h < 1.0)) throw Error(Errc::ParamOutOfRange, "Hurst exponent must lie in (0, 1)");
}

}  // namespace

std::vector<double> fgn_increments(double hurst, std::size_t n, Rng& rng) {
  check_hurst(hurst);
  const double two_h = 2.0 * hurst;
  auto cov = [two_h](std::size_t k) {
    const double kk = static_cast<double>(k);
    return 0.5 * (std::pow(kk + 1.0, two_h) - 2.0 * std::pow(kk, two_h) + std::pow(std::abs(kk - 1.0), two_h));
  };
  return circulant_gaussian(cov, n, rng);
}

Signal gen_fbm(const SynthesisConfig& config) {
  const auto* model = std::get_if<FbmModel>(&config.model);
  if (model == nullptr) throw Error(Errc::InvalidArgument, "gen_fbm needs an fBm model");
  check_length(config.length);
  Rng rng(config.seed);
  return Signal{cumulative_sum(fgn_increments(model->hurst, config.length, rng)), "fbm"};
}

Signal gen_fgn(const SynthesisConfig& config) {
  const auto* model = std::get_if<FgnModel>(&config.model);
  if (model == nullptr) throw Error(Errc::InvalidArgument, "gen_fgn needs an fGn model");
  if (!(model->alpha > -1.0 && model->alpha < 0.0)) {
    throw Error(Errc::ParamOutOfRange, "fGn exponent must lie in (-1, 0)");
  }
  SynthesisConfig fbm = config;
  fbm.model = FbmModel{model->alpha + 1.0};
  const Signal path = gen_fbm(fbm);
  std::vector<double> diff(path.length());
  double prev = 0.0;
  for (std::size_t i = 0; i < diff.size(); ++i) {
    diff[i] = path.samples[i] - prev;
    prev = path.samples[i];
  }
  return Signal{std::move(diff), "fgn"};
}

CoefficientPyramid gen_rws(const SynthesisConfig& config) {
  check_length(config.length);
  RwsModel rws;
  if (const auto* lac = std::get_if<LacunaryModel>(&config.model)) {
    rws.atoms = {{lac->alpha, lac->eta}};
    rws.uniform_bound = lac->alpha;
    rws.j_coarse = lac->j_coarse;
  } else if (const auto* m = std::get_if<RwsModel>(&config.model)) {
    rws = *m;
  } else {
    throw Error(Errc::InvalidArgument, "gen_rws needs a random wavelet series model");
  }
  const int depth = dyadic_depth(config.length);
  if (rws.j_coarse < 1 || rws.j_coarse > depth - 2) {
    throw Error(Errc::ParamOutOfRange, "coarsest scale out of range");
  }
  if (!rws.law && rws.atoms.empty()) throw Error(Errc::InvalidArgument, "random wavelet series needs atoms or a law");

  // Rare atoms first so that clamping the cumulative probability at 1 only
  // ever trims the densest atom.
  std::vector<RwsAtom> atoms = rws.atoms;
  std::stable_sort(atoms.begin(), atoms.end(), [](const RwsAtom& a, const RwsAtom& b) { return a.eta < b.eta; });
  for (const auto& a : atoms) {
    if (!std::isfinite(a.alpha) || !std::isfinite(a.eta) || a.eta > 1.0) {
      throw Error(Errc::ParamOutOfRange, "atom needs finite alpha and eta <= 1");
    }
    if (a.alpha < rws.uniform_bound) {
      throw Error(Errc::LawViolatesUniformBound, "atom alpha " + std::to_string(a.alpha) + " below uniform bound " +
                                                     std::to_string(rws.uniform_bound));
    }
  }

  Rng rng(config.seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<CoefficientPyramid::Level> levels;
  for (int j = rws.j_coarse; j < depth; ++j) {
    const std::size_t count = std::size_t{1} << j;
    CoefficientPyramid::Level level{std::vector<double>(count, 0.0), count};
    const double bound = std::exp2(-rws.uniform_bound * j);
    if (rws.law) {
      for (auto& c : level.coeffs) {
        c = rws.law(j, rng);
        if (!std::isfinite(c) || std::abs(c) > bound * (1.0 + 1e-12)) {
          throw Error(Errc::LawViolatesUniformBound, "law produced |c| above 2^{-A j} at j=" + std::to_string(j));
        }
      }
    } else {
      std::vector<double> cumulative;
      double acc = 0.0;
      for (const auto& a : atoms) {
        acc = std::min(1.0, acc + std::exp2((a.eta - 1.0) * j));
        cumulative.push_back(acc);
      }
      for (auto& c : level.coeffs) {
        const double u = uniform(rng);
        const bool negative = uniform(rng) < 0.5;
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        if (it == cumulative.end()) continue;
        const double mag = std::exp2(-atoms[static_cast<std::size_t>(it - cumulative.begin())].alpha * j);
        c = negative ? -mag : mag;
      }
    }
    levels.push_back(std::move(level));
  }
  return CoefficientPyramid(rws.j_coarse, std::move(levels), config.length);
}

Signal gen_mrw(const SynthesisConfig& config) {
  const auto* model = std::get_if<MrwModel>(&config.model);
  if (model == nullptr) throw Error(Errc::InvalidArgument, "gen_mrw needs an MRW model");
  check_length(config.length);
  check_hurst(model->hurst);
  const double lambda2 = model->lambda * model->lambda;
  if (!(model->lambda > 0.0) || !(lambda2 < 0.5)) {
    throw Error(Errc::ParamOutOfRange, "MRW needs lambda > 0 and lambda^2 < 0.5");
  }
  const std::size_t n = config.length;
  const double integral = static_cast<double>(n);
  Rng rng(config.seed);
  const auto noise = fgn_increments(model->hurst, n, rng);
  auto cov = [&](std::size_t k) {
    return k < n ? lambda2 * std::log(integral / (static_cast<double>(k) + 1.0)) : 0.0;
  };
  const auto omega = circulant_gaussian(cov, n, rng);
  // Mean -Var(omega) keeps E[exp(2 omega)] = 1.
  const double mean = -lambda2 * std::log(integral);
  std::vector<double> inc(n);
  for (std::size_t i = 0; i < n; ++i) inc[i] = noise[i] * std::exp(omega[i] + mean);
  return Signal{cumulative_sum(inc), "mrw"};
}

Signal synthesize(const SynthesisConfig& config, const WaveletSpec& spec) {
  if (std::holds_alternative<FbmModel>(config.model)) return gen_fbm(config);
  if (std::holds_alternative<FgnModel>(config.model)) return gen_fgn(config);
  if (std::holds_alternative<MrwModel>(config.model)) return gen_mrw(config);
  const auto pyramid = gen_rws(config);
  return Signal{reconstruct(pyramid, spec), "rws"};
}

Parabola mrw_parabola(const MrwModel& model) {
  const double lambda2 = model.lambda * model.lambda;
  return Parabola{model.hurst + lambda2 / 2.0, lambda2};
}

}  // namespace wsmf
