#include "wsmf/sparsity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "wsmf/error.hpp"
#include "wsmf/regression.hpp"

namespace wsmf {
namespace {

double fit_delta(const std::vector<double>& x, const std::vector<double>& y, int& used) {
  used = static_cast<int>(x.size());
  if (x.empty()) return -std::numeric_limits<double>::infinity();
  if (x.size() == 1) return y[0] / x[0];
  const LinearFit plain = linear_fit(x, y);
  if (std::is_sorted(y.begin(), y.end())) return plain.slope;

  // Upper envelope: keep levels whose residual is at least the median.
  std::vector<double> resid(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) resid[i] = y[i] - (plain.intercept + plain.slope * x[i]);
  std::vector<double> sorted = resid;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted.size() % 2 == 1
                            ? sorted[sorted.size() / 2]
                            : 0.5 * (sorted[sorted.size() / 2 - 1] + sorted[sorted.size() / 2]);
  std::vector<double> xu;
  std::vector<double> yu;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (resid[i] >= median) {
      xu.push_back(x[i]);
      yu.push_back(y[i]);
    }
  }
  if (xu.size() < 2) return plain.slope;
  used = static_cast<int>(xu.size());
  return linear_fit(xu, yu).slope;
}

CoefficientPyramid restrict(const CoefficientPyramid& pyramid, const SparsitySplit& split, bool small) {
  std::vector<CoefficientPyramid::Level> levels;
  for (int j = pyramid.j_coarse(); j <= pyramid.j_fine(); ++j) {
    const auto src = pyramid.coeffs(j);
    CoefficientPyramid::Level lvl{small ? std::vector<double>(src.size(), 0.0)
                                        : std::vector<double>(src.begin(), src.end()),
                                  pyramid.interior(j)};
    const auto it = std::find_if(split.levels.begin(), split.levels.end(),
                                 [j](const SparsityLevel& s) { return s.j == j; });
    if (it != split.levels.end()) {
      for (std::size_t k : it->small_set) lvl.coeffs[k] = small ? src[k] : 0.0;
    }
    levels.push_back(std::move(lvl));
  }
  return CoefficientPyramid(pyramid.j_coarse(), std::move(levels), pyramid.origin_length());
}

}  // namespace

SparsitySplit sparsity_split(const CoefficientPyramid& pyramid, double q, double c, int j_lo, int j_hi) {
  if (!(q > 0.0) || !(c > 0.0) || !std::isfinite(q) || !std::isfinite(c)) {
    throw Error(Errc::NonPositiveParams, "sparsity split needs q > 0 and C > 0");
  }
  if (pyramid.empty()) throw Error(Errc::InvalidArgument, "empty pyramid");
  if (j_lo == 0 && j_hi == 0) {
    j_lo = pyramid.j_coarse();
    j_hi = pyramid.j_fine();
  }
  if (j_lo > j_hi || !pyramid.has_level(j_lo) || !pyramid.has_level(j_hi)) {
    throw Error(Errc::InvalidArgument, "level range [" + std::to_string(j_lo) + ", " + std::to_string(j_hi) +
                                           "] outside the pyramid");
  }

  SparsitySplit out;
  out.q = q;
  out.c = c;
  std::vector<double> x;
  std::vector<double> y;
  for (int j = j_lo; j <= j_hi; ++j) {
    const auto coeffs = pyramid.interior_coeffs(j);
    SparsityLevel lvl;
    lvl.j = j;
    lvl.total = coeffs.size();
    lvl.budget = c * std::exp2(static_cast<double>(j)) / std::pow(static_cast<double>(j), 2.0 * q);

    std::vector<std::size_t> order(coeffs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return std::abs(coeffs[a]) < std::abs(coeffs[b]); });
    double sum = 0.0;
    std::size_t n = 0;
    for (; n < order.size(); ++n) {
      const double next = sum + std::pow(std::abs(coeffs[order[n]]), q);
      if (next > lvl.budget) break;
      sum = next;
    }
    lvl.small = n;
    lvl.small_sum = sum;
    lvl.small_set.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n));
    lvl.large_set.assign(order.begin() + static_cast<std::ptrdiff_t>(n), order.end());
    std::sort(lvl.small_set.begin(), lvl.small_set.end());
    std::sort(lvl.large_set.begin(), lvl.large_set.end());
    if (lvl.total > lvl.small) {
      x.push_back(j);
      y.push_back(std::log2(static_cast<double>(lvl.total - lvl.small)));
    }
    out.levels.push_back(std::move(lvl));
  }
  out.delta = fit_delta(x, y, out.fit_levels);
  return out;
}

CoefficientPyramid restrict_to_small(const CoefficientPyramid& pyramid, const SparsitySplit& split) {
  return restrict(pyramid, split, true);
}

CoefficientPyramid restrict_to_large(const CoefficientPyramid& pyramid, const SparsitySplit& split) {
  return restrict(pyramid, split, false);
}

std::optional<double> admissible_p_bound(double delta, double hmin) {
  if (!(delta < 1.0)) throw Error(Errc::DeltaOutOfRange, "delta must be < 1, got " + std::to_string(delta));
  if (hmin >= 0.0) return std::nullopt;
  return (1.0 - delta) / -hmin;
}

}  // namespace wsmf
