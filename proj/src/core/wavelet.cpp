#include "wsmf/wavelet.hpp"

#include <array>
#include <cmath>
#include <string>

#include "wsmf/error.hpp"

namespace wsmf {
namespace {

// Daubechies scaling filters (reconstruction low-pass, sum = sqrt(2)).
const std::array<std::vector<double>, 8>& daubechies_table() {
  static const std::array<std::vector<double>, 8> table = {{
      {0.70710678118654757, 0.70710678118654757},
      {0.48296291314453416, 0.83651630373780794, 0.22414386804201339, -0.12940952255126037},
      {0.33267055295008263, 0.80689150931109255, 0.45987750211849154, -0.13501102001025458,
       -0.085441273882026658, 0.035226291885709533},
      {0.23037781330889651, 0.71484657055291567, 0.63088076792985892, -0.027983769416859854,
       -0.18703481171909309, 0.030841381835560764, 0.032883011666885197, -0.010597401785069032},
      {0.16010239797419293, 0.60382926979718965, 0.72430852843777294, 0.13842814590132074,
       -0.24229488706638203, -0.032244869584638375, 0.077571493840045719, -0.0062414902127982744,
       -0.012580751999081999, 0.0033357252854737712},
      {0.11154074335010947, 0.49462389039845306, 0.75113390802109536, 0.31525035170919763,
       -0.22626469396543983, -0.12976686756726194, 0.097501605587323043, 0.027522865530305727,
       -0.03158203931748603, 0.00055384220116149613, 0.0047772575109455108, -0.0010773010853084796},
      {0.077852054085009184, 0.39653931948191729, 0.72913209084623509, 0.46978228740519312,
       -0.14390600392856498, -0.22403618499387498, 0.071309219266830259, 0.080612609151083078,
       -0.038029936935014413, -0.016574541630666881, 0.01255099855609984, 0.00042957797292136651,
       -0.0018016407040474908, 0.00035371379997452024},
      {0.054415842243104008, 0.31287159091429995, 0.67563073629728976, 0.58535468365420673,
       -0.015829105256349306, -0.28401554296154691, 0.00047248457391328279, 0.12874742662047847,
       -0.017369301001807547, -0.044088253930794755, 0.013981027917398282, 0.0087460940474057766,
       -0.0048703529934515741, -0.00039174037337694705, 0.00067544940645056933,
       -0.00011747678412476953},
  }};
  return table;
}

// One analysis step: approx/detail of length n/2 from a periodic input of length n.
void analysis_step(std::span<const double> in, const WaveletSpec& spec, std::vector<double>& approx,
                   std::vector<double>& detail) {
  const std::size_t n = in.size();
  const std::size_t half = n / 2;
  const auto h = spec.lowpass();
  const auto g = spec.highpass();
  approx.assign(half, 0.0);
  detail.assign(half, 0.0);
  for (std::size_t k = 0; k < half; ++k) {
    double a = 0.0;
    double d = 0.0;
    for (std::size_t m = 0; m < h.size(); ++m) {
      const double x = in[(2 * k + m) % n];
      a += h[m] * x;
      d += g[m] * x;
    }
    approx[k] = a;
    detail[k] = d;
  }
}

void synthesis_step(std::span<const double> approx, std::span<const double> detail, const WaveletSpec& spec,
                    std::vector<double>& out) {
  const std::size_t half = approx.size();
  const std::size_t n = 2 * half;
  const auto h = spec.lowpass();
  const auto g = spec.highpass();
  out.assign(n, 0.0);
  for (std::size_t k = 0; k < half; ++k) {
    for (std::size_t m = 0; m < h.size(); ++m) {
      out[(2 * k + m) % n] += h[m] * approx[k] + g[m] * detail[k];
    }
  }
}

// Number of leading coefficients at octave o whose cascaded support
// [2^o k, 2^o k + (L-1)(2^o - 1)] stays inside [0, n).
std::size_t interior_count(std::size_t n, std::size_t taps, int octave, std::size_t count) {
  const std::size_t span = std::size_t{1} << octave;
  const std::size_t reach = (taps - 1) * (span - 1);
  if (reach > n - 1) return 0;
  const std::size_t last = (n - 1 - reach) / span;
  return std::min(count, last + 1);
}

}  // namespace

WaveletSpec::WaveletSpec(WaveletFamily family, int r, std::vector<double> lowpass)
    : family_(family), vanishing_moments_(r), lowpass_(std::move(lowpass)) {
  const std::size_t L = lowpass_.size();
  highpass_.resize(L);
  for (std::size_t m = 0; m < L; ++m) {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    highpass_[m] = sign * lowpass_[L - 1 - m];
  }
}

WaveletSpec WaveletSpec::daubechies(int vanishing_moments) {
  if (vanishing_moments < 1 || vanishing_moments > kMaxVanishingMoments) {
    throw Error(Errc::InvalidArgument,
                "vanishing moments must be in [1, " + std::to_string(kMaxVanishingMoments) + "], got " +
                    std::to_string(vanishing_moments));
  }
  return WaveletSpec(WaveletFamily::Daubechies, vanishing_moments,
                     daubechies_table()[static_cast<std::size_t>(vanishing_moments - 1)]);
}

CoefficientPyramid::CoefficientPyramid(int j_coarse, std::vector<Level> levels, std::size_t origin_length)
    : j_coarse_(j_coarse), levels_(std::move(levels)), origin_length_(origin_length) {
  for (const auto& lvl : levels_) {
    if (lvl.interior > lvl.coeffs.size()) {
      throw Error(Errc::InvalidArgument, "interior count exceeds level size");
    }
  }
}

const CoefficientPyramid::Level& CoefficientPyramid::level(int j) const {
  if (!has_level(j)) {
    throw Error(Errc::InvalidArgument, "scale " + std::to_string(j) + " not in pyramid [" +
                                           std::to_string(j_coarse()) + ", " + std::to_string(j_fine()) + "]");
  }
  return levels_[static_cast<std::size_t>(j - j_coarse_)];
}

std::span<const double> CoefficientPyramid::interior_coeffs(int j) const {
  const auto& lvl = level(j);
  return std::span<const double>(lvl.coeffs).first(lvl.interior);
}

int dyadic_depth(std::size_t n) {
  int depth = 0;
  while ((n >> 1) > 0) {
    n >>= 1;
    ++depth;
  }
  return depth;
}

CoefficientPyramid decompose(const Signal& signal, const WaveletSpec& spec, int j_fine, int j_coarse) {
  const std::size_t n = signal.length();
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(signal.samples[i])) {
      throw Error(Errc::NonFiniteInput, "sample " + std::to_string(i) + " of '" + signal.label + "' is not finite");
    }
  }
  if (j_coarse < 1 || j_fine <= j_coarse) {
    throw Error(Errc::InvalidArgument, "need j_fine > j_coarse >= 1, got j_fine=" + std::to_string(j_fine) +
                                           " j_coarse=" + std::to_string(j_coarse));
  }
  if (j_coarse + 2 >= 63 || n < (std::size_t{1} << (j_coarse + 2))) {
    throw Error(Errc::SignalTooShort, std::to_string(n) + " samples cannot support scale " +
                                          std::to_string(j_coarse) + " (need at least 2^(j_coarse+2))");
  }
  const int depth = dyadic_depth(n);
  if (j_fine > depth - 1) {
    throw Error(Errc::SignalTooShort, "finest scale " + std::to_string(j_fine) + " exceeds depth-1 = " +
                                          std::to_string(depth - 1) + " for " + std::to_string(n) + " samples");
  }

  const int octaves = depth - j_coarse;
  const std::size_t block = std::size_t{1} << octaves;
  const std::size_t used = (n / block) * block;

  std::vector<double> approx(signal.samples.begin(), signal.samples.begin() + static_cast<std::ptrdiff_t>(used));
  std::vector<double> next;
  std::vector<double> detail;
  std::vector<CoefficientPyramid::Level> levels(static_cast<std::size_t>(j_fine - j_coarse + 1));

  for (int octave = 1; octave <= octaves; ++octave) {
    analysis_step(approx, spec, next, detail);
    const int j = depth - octave;
    if (j <= j_fine) {
      const double l1 = std::exp2(0.5 * j);
      auto& lvl = levels[static_cast<std::size_t>(j - j_coarse)];
      lvl.coeffs.resize(detail.size());
      for (std::size_t k = 0; k < detail.size(); ++k) lvl.coeffs[k] = l1 * detail[k];
      lvl.interior = interior_count(used, spec.taps(), octave, detail.size());
    }
    approx.swap(next);
  }
  return CoefficientPyramid(j_coarse, std::move(levels), used);
}

CoefficientPyramid decompose(const Signal& signal, const WaveletSpec& spec, int j_coarse) {
  return decompose(signal, spec, dyadic_depth(signal.length()) - 1, j_coarse);
}

CoefficientPyramid pseudo_fractional_integrate(const CoefficientPyramid& pyramid, double s) {
  if (!std::isfinite(s)) throw Error(Errc::InvalidArgument, "fractional order must be finite");
  return pyramid.scaled_by_level([s](int j) { return std::exp2(-s * j); });
}

std::vector<double> reconstruct(const CoefficientPyramid& pyramid, const WaveletSpec& spec) {
  if (pyramid.empty()) throw Error(Errc::InvalidArgument, "cannot reconstruct an empty pyramid");
  const std::size_t n = pyramid.origin_length();
  const int depth = dyadic_depth(n);
  const int octaves = depth - pyramid.j_coarse();
  if (pyramid.j_fine() != depth - 1 || (n >> octaves) << octaves != n) {
    throw Error(Errc::InvalidArgument, "pyramid does not tile its origin length");
  }
  std::vector<double> approx(n >> octaves, 0.0);
  std::vector<double> out;
  std::vector<double> detail;
  for (int j = pyramid.j_coarse(); j <= pyramid.j_fine(); ++j) {
    const auto c = pyramid.coeffs(j);
    if (c.size() != approx.size()) {
      throw Error(Errc::InvalidArgument, "level " + std::to_string(j) + " has " + std::to_string(c.size()) +
                                             " coefficients, expected " + std::to_string(approx.size()));
    }
    const double inv_l1 = std::exp2(-0.5 * j);
    detail.resize(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) detail[k] = inv_l1 * c[k];
    synthesis_step(approx, detail, spec, out);
    approx.swap(out);
  }
  return approx;
}

}  // namespace wsmf
