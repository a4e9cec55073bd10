#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace wsmf {

struct Signal {
  std::vector<double> samples;
  std::string label;

  std::size_t length() const noexcept { return samples.size(); }
};

enum class WaveletFamily { Daubechies };

// Compactly supported orthonormal wavelet. Daubechies filters with r
// vanishing moments have 2r taps; r is limited to the tabulated 1..8.
class WaveletSpec {
 public:
  static constexpr int kDefaultVanishingMoments = 3;
  static constexpr int kMaxVanishingMoments = 8;

  static WaveletSpec daubechies(int vanishing_moments = kDefaultVanishingMoments);

  WaveletFamily family() const noexcept { return family_; }
  int vanishing_moments() const noexcept { return vanishing_moments_; }
  std::span<const double> lowpass() const noexcept { return lowpass_; }
  std::span<const double> highpass() const noexcept { return highpass_; }
  std::size_t taps() const noexcept { return lowpass_.size(); }

 private:
  WaveletSpec(WaveletFamily family, int r, std::vector<double> lowpass);

  WaveletFamily family_;
  int vanishing_moments_;
  std::vector<double> lowpass_;
  std::vector<double> highpass_;
};

struct DyadicIndex {
  int j = 0;
  std::int64_t k = 0;

  friend bool operator==(const DyadicIndex&, const DyadicIndex&) = default;
  friend auto operator<=>(const DyadicIndex&, const DyadicIndex&) = default;
};

// Discrete wavelet coefficients c_{j,k} in L1 normalization, one level per
// dyadic scale j (larger j = finer). Level j holds count(j) coefficients, of
// which the prefix [0, interior(j)) has filter support that never crosses the
// end of the signal under periodic extension. Only interior coefficients take
// part in downstream statistics.
class CoefficientPyramid {
 public:
  struct Level {
    std::vector<double> coeffs;
    std::size_t interior = 0;
  };

  CoefficientPyramid() = default;
  CoefficientPyramid(int j_coarse, std::vector<Level> levels, std::size_t origin_length);

  int j_coarse() const noexcept { return j_coarse_; }
  int j_fine() const noexcept { return j_coarse_ + static_cast<int>(levels_.size()) - 1; }
  std::size_t level_count() const noexcept { return levels_.size(); }
  std::size_t origin_length() const noexcept { return origin_length_; }
  bool empty() const noexcept { return levels_.empty(); }

  bool has_level(int j) const noexcept { return j >= j_coarse() && j <= j_fine(); }
  const Level& level(int j) const;
  std::span<const double> coeffs(int j) const { return level(j).coeffs; }
  std::span<const double> interior_coeffs(int j) const;
  std::size_t count(int j) const { return level(j).coeffs.size(); }
  std::size_t interior(int j) const { return level(j).interior; }

  // Returns a copy with every coefficient at level j multiplied by factor(j).
  template <typename F>
  CoefficientPyramid scaled_by_level(F&& factor) const {
    CoefficientPyramid out = *this;
    for (std::size_t i = 0; i < out.levels_.size(); ++i) {
      const double f = factor(j_coarse_ + static_cast<int>(i));
      for (double& c : out.levels_[i].coeffs) c *= f;
    }
    return out;
  }

 private:
  int j_coarse_ = 0;
  std::vector<Level> levels_;
  std::size_t origin_length_ = 0;
};

// floor(log2(n)); the number of samples n = 2^J maps level j to 2^j coefficients.
int dyadic_depth(std::size_t n);

// Periodic orthonormal DWT of the signal, stored in L1 normalization
// (c_{j,k} = 2^{j/2} x orthonormal detail). Requires j_fine > j_coarse >= 1,
// j_fine < dyadic_depth(n) and n >= 2^(j_coarse + 2). Trailing samples beyond
// the largest multiple of 2^(depth - j_coarse) are dropped.
CoefficientPyramid decompose(const Signal& signal, const WaveletSpec& spec, int j_fine, int j_coarse);

// Decompose over every level the signal supports: j_coarse .. dyadic_depth(n) - 1.
CoefficientPyramid decompose(const Signal& signal, const WaveletSpec& spec, int j_coarse = 1);

// c_{j,k} -> 2^{-s j} c_{j,k}. Negative s is pseudo-fractional differentiation.
CoefficientPyramid pseudo_fractional_integrate(const CoefficientPyramid& pyramid, double s);

// Inverse periodic transform of a pyramid whose level j holds exactly
// origin_length / 2^(depth - j) coefficients; the coarse approximation is zero.
std::vector<double> reconstruct(const CoefficientPyramid& pyramid, const WaveletSpec& spec);

}  // namespace wsmf
