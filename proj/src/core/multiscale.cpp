#include "wsmf/multiscale.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wsmf/error.hpp"

namespace wsmf {
namespace {

// ceil() that ignores the last-ulp noise of pow(), so that 16^0.25 is 2.
double robust_ceil(double x) { return std::ceil(x - 1e-9); }

std::vector<double> interior_abs(const CoefficientPyramid& pyramid, int j) {
  const auto c = pyramid.interior_coeffs(j);
  std::vector<double> out(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) out[k] = std::abs(c[k]);
  return out;
}

void require_levels(const CoefficientPyramid& pyramid, int min_levels, const char* what) {
  if (static_cast<int>(pyramid.level_count()) < min_levels) {
    throw Error(Errc::InsufficientScales, std::string(what) + " needs at least " + std::to_string(min_levels) +
                                              " levels, pyramid has " + std::to_string(pyramid.level_count()));
  }
}

struct ClippedRange {
  std::int64_t lo = 0;
  std::int64_t hi = -1;  // inclusive; empty when hi < lo
  bool clipped = false;
};

ClippedRange clip(std::int64_t lo, std::int64_t hi, std::size_t available) {
  ClippedRange r;
  const auto last = static_cast<std::int64_t>(available) - 1;
  r.clipped = lo < 0 || hi > last;
  r.lo = std::max<std::int64_t>(lo, 0);
  r.hi = std::min(hi, last);
  return r;
}

}  // namespace

int GrowthPair::theta(int j) const {
  if (beta == 0.0) return j + theta_const;
  return j + static_cast<int>(robust_ceil(std::pow(static_cast<double>(j), beta)));
}

std::int64_t GrowthPair::omega(int j) const {
  const double w = robust_ceil(std::pow(static_cast<double>(j), a));
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(w));
}

std::size_t GrowthPair::stride(int j) const { return static_cast<std::size_t>(2 * omega(j)); }

void GrowthPair::validate(int j_lo, int j_hi) const {
  if (!(beta >= 0.0 && beta < 1.0)) throw Error(Errc::InvalidArgument, "theta exponent beta must lie in [0, 1)");
  if (theta_const < 0) throw Error(Errc::InvalidArgument, "theta constant must be >= 0");
  if (!(a >= 0.0) || !std::isfinite(a)) throw Error(Errc::InvalidArgument, "omega exponent a must be finite and >= 0");
  for (int j = std::max(j_lo, 1); j <= j_hi; ++j) {
    if (theta(j) < j || theta(j + 1) < theta(j)) {
      throw Error(Errc::InvalidArgument, "theta is not non-decreasing above the identity at j=" + std::to_string(j));
    }
    if (omega(j + 1) < omega(j)) {
      throw Error(Errc::InvalidArgument, "omega is decreasing at j=" + std::to_string(j));
    }
  }
}

const char* to_string(FieldKind kind) noexcept {
  switch (kind) {
    case FieldKind::Coefficients: return "coefficients";
    case FieldKind::Leaders: return "leaders";
    case FieldKind::PLeaders: return "p-leaders";
    case FieldKind::ThetaOmegaLeaders: return "theta-omega-leaders";
  }
  return "unknown";
}

std::size_t FieldLevel::complete_count() const {
  return static_cast<std::size_t>(std::count(complete.begin(), complete.end(), std::uint8_t{1}));
}

MultiscaleField::MultiscaleField(FieldKind kind, std::vector<FieldLevel> levels, int valid_lo, int valid_hi)
    : kind_(kind), levels_(std::move(levels)), valid_lo_(valid_lo), valid_hi_(valid_hi) {
  for (std::size_t i = 1; i < levels_.size(); ++i) {
    if (levels_[i].j != levels_[i - 1].j + 1) throw Error(Errc::InvalidArgument, "field levels must be consecutive");
  }
  for (const auto& lvl : levels_) {
    if (lvl.complete.size() != lvl.values.size()) {
      throw Error(Errc::InvalidArgument, "completeness mask size mismatch at level " + std::to_string(lvl.j));
    }
    if (lvl.stride == 0) throw Error(Errc::InvalidArgument, "zero stride");
  }
}

bool MultiscaleField::has_level(int j) const noexcept {
  return !levels_.empty() && j >= levels_.front().j && j <= levels_.back().j;
}

const FieldLevel& MultiscaleField::level(int j) const {
  if (!has_level(j)) throw Error(Errc::InvalidArgument, "scale " + std::to_string(j) + " not in field");
  return levels_[static_cast<std::size_t>(j - levels_.front().j)];
}

MultiscaleField coefficient_field(const CoefficientPyramid& pyramid) {
  std::vector<FieldLevel> levels;
  for (int j = pyramid.j_coarse(); j <= pyramid.j_fine(); ++j) {
    FieldLevel lvl;
    lvl.j = j;
    lvl.values = interior_abs(pyramid, j);
    lvl.complete.assign(lvl.values.size(), 1);
    levels.push_back(std::move(lvl));
  }
  return MultiscaleField(FieldKind::Coefficients, std::move(levels), pyramid.j_coarse(), pyramid.j_fine());
}

MultiscaleField wavelet_leaders(const CoefficientPyramid& pyramid) {
  require_levels(pyramid, 3, "wavelet leaders");
  const int jf = pyramid.j_fine();
  std::vector<std::vector<double>> mags;
  for (int j = pyramid.j_coarse(); j <= jf; ++j) mags.push_back(interior_abs(pyramid, j));

  std::vector<FieldLevel> levels;
  for (int j = pyramid.j_coarse(); j <= jf; ++j) {
    FieldLevel lvl;
    lvl.j = j;
    const std::size_t n = pyramid.interior(j);
    lvl.values.assign(n, 0.0);
    lvl.complete.assign(n, 1);
    for (std::size_t k = 0; k < n; ++k) {
      double sup = 0.0;
      bool clipped = false;
      for (int jp = j; jp <= jf; ++jp) {
        const std::int64_t scale = std::int64_t{1} << (jp - j);
        const auto& m = mags[static_cast<std::size_t>(jp - pyramid.j_coarse())];
        const auto r = clip((static_cast<std::int64_t>(k) - 1) * scale,
                            (static_cast<std::int64_t>(k) + 2) * scale - 1, m.size());
        clipped = clipped || r.clipped;
        for (std::int64_t kp = r.lo; kp <= r.hi; ++kp) sup = std::max(sup, m[static_cast<std::size_t>(kp)]);
      }
      lvl.values[k] = sup;
      lvl.complete[k] = clipped ? 0 : 1;
    }
    levels.push_back(std::move(lvl));
  }
  return MultiscaleField(FieldKind::Leaders, std::move(levels), pyramid.j_coarse(), jf - kMinFinerLevels);
}

MultiscaleField p_leaders(const CoefficientPyramid& pyramid, double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw Error(Errc::NonPositiveP, "p must be finite and > 0");
  require_levels(pyramid, 3, "p-leaders");
  const int jf = pyramid.j_fine();
  std::vector<std::vector<double>> powers;
  for (int j = pyramid.j_coarse(); j <= jf; ++j) {
    auto m = interior_abs(pyramid, j);
    for (double& v : m) v = std::pow(v, p);
    powers.push_back(std::move(m));
  }

  std::vector<FieldLevel> levels;
  for (int j = pyramid.j_coarse(); j <= jf; ++j) {
    FieldLevel lvl;
    lvl.j = j;
    const std::size_t n = pyramid.interior(j);
    lvl.values.assign(n, 0.0);
    lvl.complete.assign(n, 1);
    for (std::size_t k = 0; k < n; ++k) {
      double total = 0.0;
      bool clipped = false;
      for (int jp = j; jp <= jf; ++jp) {
        const std::int64_t scale = std::int64_t{1} << (jp - j);
        const auto& m = powers[static_cast<std::size_t>(jp - pyramid.j_coarse())];
        const auto r = clip((static_cast<std::int64_t>(k) - 1) * scale,
                            (static_cast<std::int64_t>(k) + 2) * scale - 1, m.size());
        clipped = clipped || r.clipped;
        double level_sum = 0.0;
        for (std::int64_t kp = r.lo; kp <= r.hi; ++kp) level_sum += m[static_cast<std::size_t>(kp)];
        total += level_sum * std::exp2(-static_cast<double>(jp - j));
      }
      lvl.values[k] = std::pow(total, 1.0 / p);
      lvl.complete[k] = clipped ? 0 : 1;
    }
    levels.push_back(std::move(lvl));
  }
  MultiscaleField field(FieldKind::PLeaders, std::move(levels), pyramid.j_coarse(), jf - kMinFinerLevels);
  field.with_p(p);
  return field;
}

PyramidShape PyramidShape::of(const CoefficientPyramid& pyramid) {
  PyramidShape shape;
  shape.j_coarse = pyramid.j_coarse();
  for (int j = pyramid.j_coarse(); j <= pyramid.j_fine(); ++j) shape.interior.push_back(pyramid.interior(j));
  return shape;
}

std::size_t PyramidShape::positions(int j) const {
  if (j < j_coarse || j > j_fine()) return 0;
  return interior[static_cast<std::size_t>(j - j_coarse)];
}

Neighbourhood theta_omega_neighbourhood(const DyadicIndex& index, const GrowthPair& growth,
                                        const PyramidShape& shape) {
  Neighbourhood out;
  const int top = growth.theta(index.j);
  if (top > shape.j_fine()) out.clipped = true;
  for (int jp = index.j; jp <= std::min(top, shape.j_fine()); ++jp) {
    const std::int64_t scale = std::int64_t{1} << (jp - index.j);
    const std::int64_t centre = index.k * scale;
    const std::int64_t radius = growth.omega(jp) * scale;
    const auto r = clip(centre - radius, centre + radius, shape.positions(jp));
    out.clipped = out.clipped || r.clipped;
    for (std::int64_t kp = r.lo; kp <= r.hi; ++kp) out.members.push_back({jp, kp});
  }
  return out;
}

MultiscaleField theta_omega_leaders(const CoefficientPyramid& pyramid, const GrowthPair& growth) {
  require_levels(pyramid, 2, "theta-omega leaders");
  const int jc = pyramid.j_coarse();
  const int jf = pyramid.j_fine();
  growth.validate(jc, jf);
  std::vector<std::vector<double>> mags;
  for (int j = jc; j <= jf; ++j) mags.push_back(interior_abs(pyramid, j));

  std::vector<FieldLevel> levels;
  int valid_hi = jc - 1;
  for (int j = jc; j <= jf; ++j) {
    FieldLevel lvl;
    lvl.j = j;
    lvl.stride = growth.stride(j);
    const int top = growth.theta(j);
    if (top <= jf) valid_hi = j;
    const std::size_t n = pyramid.interior(j);
    for (std::size_t k = 0; k < n; k += lvl.stride) {
      double sup = 0.0;
      bool clipped = top > jf;
      for (int jp = j; jp <= std::min(top, jf); ++jp) {
        const std::int64_t scale = std::int64_t{1} << (jp - j);
        const std::int64_t centre = static_cast<std::int64_t>(k) * scale;
        const std::int64_t radius = growth.omega(jp) * scale;
        const auto& m = mags[static_cast<std::size_t>(jp - jc)];
        const auto r = clip(centre - radius, centre + radius, m.size());
        clipped = clipped || r.clipped;
        for (std::int64_t kp = r.lo; kp <= r.hi; ++kp) sup = std::max(sup, m[static_cast<std::size_t>(kp)]);
      }
      lvl.values.push_back(sup);
      lvl.complete.push_back(clipped ? 0 : 1);
    }
    levels.push_back(std::move(lvl));
  }
  MultiscaleField field(FieldKind::ThetaOmegaLeaders, std::move(levels), jc, valid_hi);
  field.with_growth(growth);
  return field;
}

}  // namespace wsmf
