#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "wsmf/wavelet.hpp"

namespace wsmf {

// Growth functions bounding a (theta, omega)-neighbourhood:
//   theta(j) = j + ceil(j^beta)   for beta in (0, 1)
//   theta(j) = j + theta_const    for beta == 0
//   omega(j) = max(1, ceil(j^a))  for a >= 0
struct GrowthPair {
  double beta = 0.25;
  int theta_const = 0;
  double a = 1.0;

  static GrowthPair defaults() { return {}; }

  int theta(int j) const;
  std::int64_t omega(int j) const;
  // Subsampling stride floor(2 omega(j)) for theta-omega leaders.
  std::size_t stride(int j) const;

  // Throws InvalidArgument unless beta in [0,1), theta_const >= 0, a >= 0 and
  // theta(j+1) >= theta(j) >= j over [j_lo, j_hi].
  void validate(int j_lo, int j_hi) const;
};

enum class FieldKind { Coefficients, Leaders, PLeaders, ThetaOmegaLeaders };

const char* to_string(FieldKind kind) noexcept;

// Per-scale multiscale quantities. Level j holds values at positions
// k = i * stride for i in [0, values.size()). complete[i] is 0 when the
// supremum/sum window of that position was clipped at the data boundary;
// clipped positions carry a value but are excluded from structure functions.
struct FieldLevel {
  int j = 0;
  std::size_t stride = 1;
  std::vector<double> values;
  std::vector<std::uint8_t> complete;

  std::size_t complete_count() const;
};

class MultiscaleField {
 public:
  MultiscaleField() = default;
  MultiscaleField(FieldKind kind, std::vector<FieldLevel> levels, int valid_lo, int valid_hi);

  FieldKind kind() const noexcept { return kind_; }
  double p() const noexcept { return p_; }
  const GrowthPair& growth() const noexcept { return growth_; }

  const std::vector<FieldLevel>& levels() const noexcept { return levels_; }
  const FieldLevel& level(int j) const;
  bool has_level(int j) const noexcept;

  // Inclusive range of scales whose window has full finer-scale support.
  // Empty when valid_lo > valid_hi.
  int valid_lo() const noexcept { return valid_lo_; }
  int valid_hi() const noexcept { return valid_hi_; }
  bool is_valid(int j) const noexcept { return j >= valid_lo_ && j <= valid_hi_ && has_level(j); }

  MultiscaleField& with_p(double p) {
    p_ = p;
    return *this;
  }
  MultiscaleField& with_growth(const GrowthPair& g) {
    growth_ = g;
    return *this;
  }

 private:
  FieldKind kind_ = FieldKind::Coefficients;
  double p_ = 0.0;
  GrowthPair growth_{};
  std::vector<FieldLevel> levels_;
  int valid_lo_ = 0;
  int valid_hi_ = -1;
};

// Leaders and p-leaders need this many finer levels below j for j to be valid.
inline constexpr int kMinFinerLevels = 4;

// |c_{j,k}| over interior coefficients, every level valid.
MultiscaleField coefficient_field(const CoefficientPyramid& pyramid);

// l(j,k) = sup |c_{j',k'}| over lambda' inside 3 lambda_{j,k}, j <= j' <= j_fine.
MultiscaleField wavelet_leaders(const CoefficientPyramid& pyramid);

// l^(p)(j,k) = ( sum_{lambda' in 3 lambda} |c_{lambda'}|^p 2^{-(j'-j)} )^{1/p}.
MultiscaleField p_leaders(const CoefficientPyramid& pyramid, double p);

// Interior coefficient counts per level, used to clip neighbourhoods.
struct PyramidShape {
  int j_coarse = 0;
  std::vector<std::size_t> interior;

  static PyramidShape of(const CoefficientPyramid& pyramid);
  int j_fine() const noexcept { return j_coarse + static_cast<int>(interior.size()) - 1; }
  std::size_t positions(int j) const;
};

struct Neighbourhood {
  std::vector<DyadicIndex> members;
  bool clipped = false;
};

// All (j', k') with j <= j' <= theta(j) and |k 2^{j'-j} - k'| <= omega(j') 2^{j'-j},
// clipped to the available scales and interior positions.
Neighbourhood theta_omega_neighbourhood(const DyadicIndex& index, const GrowthPair& growth,
                                        const PyramidShape& shape);

// d(j,k) = sup of |c| over the (theta, omega)-neighbourhood, evaluated at
// k = 0, stride, 2 stride, ... with stride = floor(2 omega(j)).
MultiscaleField theta_omega_leaders(const CoefficientPyramid& pyramid, const GrowthPair& growth);

}  // namespace wsmf
