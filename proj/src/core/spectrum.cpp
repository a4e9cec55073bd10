#include "wsmf/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "wsmf/error.hpp"
#include "wsmf/regression.hpp"

namespace wsmf {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void finish(LegendreSpectrum& s) {
  s.mode_h = std::numeric_limits<double>::quiet_NaN();
  double best = kNegInf;
  for (std::size_t i = 0; i < s.h.size(); ++i) {
    if (s.d[i] > best) {
      best = s.d[i];
      s.mode_h = s.h[i];
    }
  }
}

// Merges extra abscissae into a sorted grid.
std::vector<double> with_points(std::span<const double> grid, std::span<const double> extra) {
  std::vector<double> h(grid.begin(), grid.end());
  h.insert(h.end(), extra.begin(), extra.end());
  std::sort(h.begin(), h.end());
  h.erase(std::unique(h.begin(), h.end()), h.end());
  return h;
}

}  // namespace

double LegendreSpectrum::max_d() const {
  double best = kNegInf;
  for (double v : d) best = std::max(best, v);
  return best;
}

double LegendreSpectrum::half_width(double level) const {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::size_t top = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] > d[top]) top = i;
  }
  if (d.empty() || !(d[top] >= level)) return nan;
  auto crossing = [&](std::size_t inside, std::size_t outside) {
    const double d_in = d[inside];
    const double d_out = std::isfinite(d[outside]) ? d[outside] : level - 1.0;
    const double t = (d_in - level) / (d_in - d_out);
    return h[inside] + t * (h[outside] - h[inside]);
  };
  double left = nan;
  for (std::size_t i = top; i > 0; --i) {
    if (d[i - 1] < level) {
      left = crossing(i, i - 1);
      break;
    }
  }
  double right = nan;
  for (std::size_t i = top; i + 1 < d.size(); ++i) {
    if (d[i + 1] < level) {
      right = crossing(i, i + 1);
      break;
    }
  }
  return 0.5 * (right - left);
}

std::vector<double> default_h_grid(std::span<const double> q, std::span<const double> zeta, std::size_t n) {
  if (q.size() != zeta.size() || q.empty() || n < 2) {
    throw Error(Errc::InvalidArgument, "default H grid needs a non-empty scaling function and n >= 2");
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  if (q.size() == 1) {
    lo = hi = q[0] != 0.0 ? zeta[0] / q[0] : 0.0;
  }
  for (std::size_t i = 0; i + 1 < q.size(); ++i) {
    const double slope = (zeta[i + 1] - zeta[i]) / (q[i + 1] - q[i]);
    lo = std::min(lo, slope);
    hi = std::max(hi, slope);
  }
  lo -= 0.5;
  hi += 0.5;
  std::vector<double> h(n);
  for (std::size_t i = 0; i < n; ++i) h[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return h;
}

std::vector<double> default_h_grid(const ScalingFunction& zeta, std::size_t n) {
  return default_h_grid(zeta.q, zeta.zeta, n);
}

LegendreSpectrum legendre_transform(std::span<const double> q, std::span<const double> zeta,
                                    std::span<const double> h_grid, QRestriction restriction, double floor) {
  if (q.size() != zeta.size()) throw Error(Errc::InvalidArgument, "q and zeta differ in length");
  if (h_grid.empty()) throw Error(Errc::InvalidArgument, "empty H grid");
  std::vector<std::pair<double, double>> terms;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!std::isfinite(q[i]) || !std::isfinite(zeta[i])) {
      throw Error(Errc::InvalidArgument, "non-finite scaling function entry");
    }
    if (restriction == QRestriction::PositiveOnly && !(q[i] > 0.0)) continue;
    terms.emplace_back(q[i], zeta[i]);
  }
  if (terms.empty()) throw Error(Errc::InvalidArgument, "no moments left after q restriction");

  LegendreSpectrum s;
  s.q_min = terms.front().first;
  s.q_max = terms.front().first;
  for (const auto& t : terms) {
    s.q_min = std::min(s.q_min, t.first);
    s.q_max = std::max(s.q_max, t.first);
  }
  s.h.assign(h_grid.begin(), h_grid.end());
  s.d.resize(h_grid.size());
  for (std::size_t i = 0; i < h_grid.size(); ++i) {
    // The q = 0 term is always present: zeta(0) = 0 so it contributes 1.
    double inf = 1.0;
    for (const auto& [qq, z] : terms) inf = std::min(inf, 1.0 + h_grid[i] * qq - z);
    s.d[i] = inf < floor ? kNegInf : inf;
  }
  finish(s);
  return s;
}

LegendreSpectrum legendre_transform(const ScalingFunction& zeta, std::span<const double> h_grid,
                                    QRestriction restriction, double floor) {
  if (restriction == QRestriction::AllQ && zeta.kind == FieldKind::Coefficients) {
    throw Error(Errc::IncompatibleQRestriction,
                "negative moments of raw wavelet coefficients are not defined; use PositiveOnly");
  }
  auto s = legendre_transform(zeta.q, zeta.zeta, h_grid, restriction, floor);
  s.source = zeta.kind;
  return s;
}

LegendreSpectrum ws_spectrum_pipeline(const CoefficientPyramid& pyramid, const GrowthPair& growth,
                                      const MomentGrid& grid, int j1, int j2, std::span<const double> h_grid) {
  const auto field = theta_omega_leaders(pyramid, growth);
  const auto sf = structure_functions(field, grid);
  const auto zeta = scaling_function(sf, j1, j2);
  if (h_grid.empty()) {
    const auto h = default_h_grid(zeta);
    return legendre_transform(zeta, h, QRestriction::AllQ);
  }
  return legendre_transform(zeta, h_grid, QRestriction::AllQ);
}

double LargeDeviationSpectrum::at(double alpha_value) const {
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (std::abs(alpha[i] - alpha_value) <= 1e-12) return rho[i];
  }
  throw Error(Errc::InvalidArgument, "alpha " + std::to_string(alpha_value) + " is not a bin centre");
}

LargeDeviationSpectrum rws_large_deviation(const CoefficientPyramid& pyramid, double epsilon,
                                           std::span<const double> alpha_grid, int j1, int j2) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw Error(Errc::InvalidArgument, "epsilon must be > 0");
  if (pyramid.empty()) throw Error(Errc::DegenerateHistogram, "empty pyramid");
  if (j1 == 0 && j2 == 0) {
    j1 = pyramid.j_coarse();
    j2 = pyramid.j_fine();
  }
  j1 = std::max(j1, 1);
  if (j2 - j1 < 1 || !pyramid.has_level(j1) || !pyramid.has_level(j2)) {
    throw Error(Errc::DegenerateHistogram, "need at least two pyramid levels in [j1, j2]");
  }

  struct LevelStats {
    int j;
    double total;
    std::size_t zeros;
    std::vector<double> exponents;  // sorted
  };
  std::vector<LevelStats> stats;
  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  for (int j = j1; j <= j2; ++j) {
    LevelStats ls{j, 0.0, 0, {}};
    const auto c = pyramid.interior_coeffs(j);
    ls.total = static_cast<double>(c.size());
    for (double v : c) {
      if (v == 0.0) {
        ++ls.zeros;
        continue;
      }
      const double x = -std::log2(std::abs(v)) / j;
      ls.exponents.push_back(x);
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
    }
    std::sort(ls.exponents.begin(), ls.exponents.end());
    if (ls.total > 0.0) stats.push_back(std::move(ls));
  }
  if (stats.size() < 2) throw Error(Errc::DegenerateHistogram, "fewer than two populated levels");

  LargeDeviationSpectrum out;
  out.epsilon = epsilon;
  out.j1 = j1;
  out.j2 = j2;
  if (!alpha_grid.empty()) {
    out.alpha.assign(alpha_grid.begin(), alpha_grid.end());
  } else if (std::isfinite(x_lo)) {
    for (double a = x_lo; a <= x_hi + 0.5 * epsilon; a += epsilon) out.alpha.push_back(a);
  }

  auto slope_over_levels = [&](auto&& count_at) {
    std::vector<double> x;
    std::vector<double> y;
    for (const auto& ls : stats) {
      const double n = count_at(ls);
      if (n <= 0.0) continue;
      x.push_back(ls.j);
      y.push_back(ls.j + std::log2(n / ls.total));
    }
    if (x.size() < 2) return kNegInf;
    return linear_fit(x, y).slope;
  };

  for (double a : out.alpha) {
    out.rho.push_back(slope_over_levels([&](const LevelStats& ls) {
      const auto lo = std::lower_bound(ls.exponents.begin(), ls.exponents.end(), a - epsilon);
      const auto hi = std::upper_bound(ls.exponents.begin(), ls.exponents.end(), a + epsilon);
      return static_cast<double>(hi - lo);
    }));
  }

  std::size_t zeros = 0;
  for (const auto& ls : stats) zeros += ls.zeros;
  out.includes_infinity_bin = zeros > 0;
  out.rho_infinity = slope_over_levels([](const LevelStats& ls) { return static_cast<double>(ls.zeros); });
  if (out.alpha.empty() && !out.includes_infinity_bin) {
    throw Error(Errc::DegenerateHistogram, "no coefficient to histogram");
  }
  return out;
}

LegendreSpectrum theoretical_spectrum(const SynthesisConfig& config, Formalism formalism,
                                      std::span<const double> h_grid, double p) {
  if (h_grid.empty()) throw Error(Errc::InvalidArgument, "empty H grid");
  LegendreSpectrum s;
  s.source = FieldKind::ThetaOmegaLeaders;

  auto point_spectrum = [&](std::span<const double> points, std::span<const double> dims) {
    s.h = with_points(h_grid, points);
    s.d.assign(s.h.size(), kNegInf);
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto it = std::lower_bound(s.h.begin(), s.h.end(), points[i]);
      s.d[static_cast<std::size_t>(it - s.h.begin())] = dims[i];
    }
  };

  if (const auto* fbm = std::get_if<FbmModel>(&config.model)) {
    const double one = 1.0;
    point_spectrum(std::span<const double>(&fbm->hurst, 1), std::span<const double>(&one, 1));
  } else if (const auto* fgn = std::get_if<FgnModel>(&config.model)) {
    if (formalism == Formalism::PExponent) {
      throw Error(Errc::UnsupportedModel, "fGn sample paths are not in any L^p; no p-spectrum");
    }
    const double one = 1.0;
    point_spectrum(std::span<const double>(&fgn->alpha, 1), std::span<const double>(&one, 1));
  } else if (const auto* mrw = std::get_if<MrwModel>(&config.model)) {
    const Parabola par = mrw_parabola(*mrw);
    s.h.assign(h_grid.begin(), h_grid.end());
    s.d.resize(s.h.size());
    for (std::size_t i = 0; i < s.h.size(); ++i) {
      const double v = 1.0 - (s.h[i] - par.c1) * (s.h[i] - par.c1) / (2.0 * par.c2);
      s.d[i] = v < 0.0 ? kNegInf : v;
    }
  } else {
    std::vector<RwsAtom> atoms;
    if (const auto* lac = std::get_if<LacunaryModel>(&config.model)) {
      atoms.push_back({lac->alpha, lac->eta});
    } else {
      const auto& rws = std::get<RwsModel>(config.model);
      if (rws.law || rws.atoms.empty()) {
        throw Error(Errc::UnsupportedModel, "closed form only available for atomic random wavelet series");
      }
      atoms = rws.atoms;
    }
    // Only atoms with eta >= 0 occur infinitely often (the set W).
    std::vector<RwsAtom> live;
    for (const auto& a : atoms) {
      if (a.eta >= 0.0) live.push_back(a);
    }
    if (live.empty()) throw Error(Errc::UnsupportedModel, "no atom with eta >= 0");

    if (formalism == Formalism::WeakScaling) {
      std::vector<double> pts;
      std::vector<double> dims;
      for (const auto& a : live) {
        pts.push_back(a.alpha);
        dims.push_back(a.eta);
      }
      point_spectrum(pts, dims);
    } else {
      if (!(p > 0.0)) throw Error(Errc::NonPositiveP, "p must be > 0");
      const double inv_p = 1.0 / p;
      double ratio_sup = kNegInf;
      double h_min = std::numeric_limits<double>::infinity();
      for (const auto& a : live) {
        if (!(a.eta < p * a.alpha + 1.0)) {
          throw Error(Errc::UnsupportedModel, "sample paths are not in L^p for this law (rho(alpha) >= p alpha + 1)");
        }
        ratio_sup = std::max(ratio_sup, a.eta / (a.alpha + inv_p));
        h_min = std::min(h_min, a.alpha);
      }
      const double h_max = 1.0 / ratio_sup - inv_p;
      const std::vector<double> ends = {h_min, h_max};
      s.h = with_points(h_grid, ends);
      s.d.assign(s.h.size(), kNegInf);
      for (std::size_t i = 0; i < s.h.size(); ++i) {
        const double h = s.h[i];
        if (h < h_min - 1e-12 || h > h_max + 1e-12) continue;
        double sup = kNegInf;
        for (const auto& a : live) {
          if (a.alpha <= h + 1e-12) sup = std::max(sup, a.eta / (a.alpha + inv_p));
        }
        s.d[i] = (h + inv_p) * sup;
      }
    }
  }
  finish(s);
  return s;
}

}  // namespace wsmf
