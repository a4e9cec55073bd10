#include "wsmf/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "wsmf/error.hpp"
#include "wsmf/regression.hpp"

namespace wsmf {
namespace {

constexpr double kUnreliableZeroFraction = 0.01;

// log2 of mean(v^q) over the given values, computed in the log domain.
// Returns -inf when every term vanishes.
double log2_mean_power(const std::vector<double>& values, double q) {
  if (values.empty()) return -std::numeric_limits<double>::infinity();
  if (q == 0.0) return 0.0;
  double top = -std::numeric_limits<double>::infinity();
  for (double v : values) top = std::max(top, q * std::log(v));
  if (top == -std::numeric_limits<double>::infinity()) return top;
  double sum = 0.0;
  for (double v : values) sum += std::exp(q * std::log(v) - top);
  return (top + std::log(sum / static_cast<double>(values.size()))) / std::numbers::ln2;
}

}  // namespace

MomentGrid MomentGrid::linspace(double lo, double hi, std::size_t n) {
  if (n == 0 || !std::isfinite(lo) || !std::isfinite(hi) || (n > 1 && hi <= lo)) {
    throw Error(Errc::InvalidArgument, "invalid moment grid specification");
  }
  MomentGrid g;
  g.q.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    g.q[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return g;
}

MomentGrid MomentGrid::from(std::vector<double> values) {
  if (values.empty()) throw Error(Errc::InvalidArgument, "empty moment grid");
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(Errc::InvalidArgument, "moment grid values must be finite");
  }
  std::sort(values.begin(), values.end());
  return MomentGrid{std::move(values)};
}

std::size_t StructureFunctions::scale_index(int j) const {
  const auto it = std::find(scales.begin(), scales.end(), j);
  if (it == scales.end()) {
    throw Error(Errc::InsufficientScales, "scale " + std::to_string(j) + " has no structure function");
  }
  return static_cast<std::size_t>(it - scales.begin());
}

StructureFunctions structure_functions(const MultiscaleField& field, const MomentGrid& grid) {
  if (grid.q.empty()) throw Error(Errc::InvalidArgument, "empty moment grid");
  if (field.kind() == FieldKind::Coefficients) {
    for (double q : grid.q) {
      if (!(q > 0.0)) {
        throw Error(Errc::NegativeMomentOnCoefficients,
                    "raw coefficients only support q > 0, got q=" + std::to_string(q));
      }
    }
  }

  StructureFunctions sf;
  sf.kind = field.kind();
  sf.q = grid.q;
  for (const auto& lvl : field.levels()) {
    if (!field.is_valid(lvl.j)) continue;
    std::vector<double> retained;
    std::vector<double> nonzero;
    for (std::size_t i = 0; i < lvl.values.size(); ++i) {
      if (!lvl.complete[i]) continue;
      retained.push_back(lvl.values[i]);
      if (lvl.values[i] > 0.0) nonzero.push_back(lvl.values[i]);
    }
    if (retained.empty()) continue;

    const std::size_t zeros = retained.size() - nonzero.size();
    std::vector<double> row(grid.q.size());
    std::vector<double> log_row(grid.q.size());
    std::vector<std::uint8_t> ok(grid.q.size());
    for (std::size_t iq = 0; iq < grid.q.size(); ++iq) {
      const double q = grid.q[iq];
      const double l2 = q < 0.0 ? log2_mean_power(nonzero, q) : log2_mean_power(retained, q);
      ok[iq] = std::isfinite(l2) ? 1 : 0;
      log_row[iq] = l2;
      row[iq] = std::exp2(l2);
    }
    sf.scales.push_back(lvl.j);
    sf.counts.push_back(retained.size());
    sf.zero_counts.push_back(zeros);
    sf.unreliable_negative_q.push_back(
        static_cast<double>(zeros) > kUnreliableZeroFraction * static_cast<double>(retained.size()) ? 1 : 0);
    sf.values.push_back(std::move(row));
    sf.log2_values.push_back(std::move(log_row));
    sf.defined.push_back(std::move(ok));
  }
  if (sf.scales.empty()) {
    throw Error(Errc::EmptyField, std::string(to_string(field.kind())) + " field has no valid scale with data");
  }
  for (std::size_t iq = 0; iq < sf.q.size(); ++iq) {
    if (sf.q[iq] >= 0.0) continue;
    bool any = false;
    for (const auto& d : sf.defined) any = any || d[iq];
    if (!any) {
      throw Error(Errc::AllZeroAtNegativeQ, "field is identically zero, q=" + std::to_string(sf.q[iq]) +
                                                " undefined at every scale");
    }
  }
  return sf;
}

std::optional<double> ScalingFunction::at(double q_value) const {
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (std::abs(q[i] - q_value) <= 1e-12) return zeta[i];
  }
  return std::nullopt;
}

ScalingFunction scaling_function(const StructureFunctions& sf, int j1, int j2) {
  if (j2 - j1 < 2) {
    throw Error(Errc::ScaleRangeTooNarrow, "need at least 3 scales, got [" + std::to_string(j1) + ", " +
                                               std::to_string(j2) + "]");
  }
  std::vector<std::size_t> rows;
  std::vector<double> x;
  std::vector<double> w;
  for (int j = j1; j <= j2; ++j) {
    const std::size_t r = sf.scale_index(j);
    rows.push_back(r);
    x.push_back(-static_cast<double>(j));
    w.push_back(static_cast<double>(sf.counts[r]));
  }

  ScalingFunction out;
  out.kind = sf.kind;
  out.j1 = j1;
  out.j2 = j2;
  out.q = sf.q;
  out.weights = w;
  std::vector<double> y(rows.size());
  for (std::size_t iq = 0; iq < sf.q.size(); ++iq) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!sf.defined[rows[i]][iq]) {
        const Errc code = sf.q[iq] < 0.0 ? Errc::AllZeroAtNegativeQ : Errc::AllZeroLevel;
        throw Error(code, "S(j=" + std::to_string(sf.scales[rows[i]]) + ", q=" + std::to_string(sf.q[iq]) +
                              ") is undefined");
      }
      y[i] = sf.log2_values[rows[i]][iq];
    }
    const LinearFit fit = weighted_linear_fit(x, y, w);
    out.zeta.push_back(fit.slope);
    out.intercept.push_back(fit.intercept);
    out.r_squared.push_back(fit.r_squared);
  }
  return out;
}

double estimate_hmin(const CoefficientPyramid& pyramid, int j1, int j2) {
  if (j2 - j1 < 2) {
    throw Error(Errc::ScaleRangeTooNarrow, "need at least 3 scales, got [" + std::to_string(j1) + ", " +
                                               std::to_string(j2) + "]");
  }
  std::vector<double> x;
  std::vector<double> y;
  for (int j = j1; j <= j2; ++j) {
    if (!pyramid.has_level(j)) {
      throw Error(Errc::InsufficientScales, "scale " + std::to_string(j) + " not in pyramid");
    }
    double sup = 0.0;
    for (double c : pyramid.interior_coeffs(j)) sup = std::max(sup, std::abs(c));
    if (!(sup > 0.0)) throw Error(Errc::AllZeroLevel, "no nonzero interior coefficient at j=" + std::to_string(j));
    x.push_back(-static_cast<double>(j));
    y.push_back(std::log2(sup));
  }
  return linear_fit(x, y).slope;
}

Admissibility p_admissibility(const ScalingFunction& zeta) {
  std::vector<std::pair<double, double>> positive;
  for (std::size_t i = 0; i < zeta.q.size(); ++i) {
    if (zeta.q[i] > 0.0) positive.emplace_back(zeta.q[i], zeta.zeta[i]);
  }
  std::sort(positive.begin(), positive.end());
  if (positive.size() < 2 || positive.front().first > 1.0) {
    throw Error(Errc::GridLacksSmallPositiveQ, "admissibility needs two positive moments, the smallest <= 1");
  }
  Admissibility out;
  double best_ratio = -std::numeric_limits<double>::infinity();
  for (const auto& [q, z] : positive) {
    if (z > 0.0) {
      out.exists_positive = true;
      if (z / q > best_ratio) {
        best_ratio = z / q;
        out.best_p = q;
      }
    }
  }
  const auto& [q1, z1] = positive[0];
  const auto& [q2, z2] = positive[1];
  out.slope_at_zero = (z2 - z1) / (q2 - q1);
  return out;
}

}  // namespace wsmf
