#include <cmath>
#include <random>

#include "doctest.h"
#include "wsmf/error.hpp"
#include "wsmf/regression.hpp"
#include "wsmf/scaling.hpp"
#include "wsmf/synth.hpp"

using namespace wsmf;

namespace {

template <typename F>
CoefficientPyramid pyramid_from(int jc, int jf, F&& value) {
  std::vector<CoefficientPyramid::Level> levels;
  for (int j = jc; j <= jf; ++j) {
    const std::size_t n = std::size_t{1} << j;
    CoefficientPyramid::Level lvl{std::vector<double>(n), n};
    for (std::size_t k = 0; k < n; ++k) lvl.coeffs[k] = value(j, k);
    levels.push_back(std::move(lvl));
  }
  return CoefficientPyramid(jc, std::move(levels), std::size_t{1} << (jf + 1));
}

Signal white_noise(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Signal s;
  s.samples.resize(n);
  for (auto& v : s.samples) v = normal(rng);
  return s;
}

}  // namespace

TEST_SUITE("scaling") {
  TEST_CASE("weighted regression recovers an exact line") {
    const double x[] = {-3, -4, -5, -6};
    const double y[] = {1.5, 2.0, 2.5, 3.0};
    const double w[] = {8, 4, 2, 1};
    const auto fit = weighted_linear_fit(x, y, w);
    CHECK(fit.slope == doctest::Approx(-0.5));
    CHECK(fit.intercept == doctest::Approx(0.0));
    CHECK(fit.r_squared == doctest::Approx(1.0));
    const double bad_w[] = {0, 0, 0, 0};
    CHECK_THROWS_AS(weighted_linear_fit(x, y, bad_w), Error);
    const double flat_x[] = {1, 1, 1, 1};
    CHECK_THROWS_AS(linear_fit(flat_x, y), Error);
  }

  TEST_CASE("a constant field has a zero scaling function") {
    const auto p = pyramid_from(1, 12, [](int, std::size_t) { return -2.5; });
    const auto grid = MomentGrid::linspace(-4.0, 4.0, 9);
    for (const auto& field : {wavelet_leaders(p), theta_omega_leaders(p, GrowthPair{})}) {
      const auto z = scaling_function(structure_functions(field, grid), 4, 7);
      for (double v : z.zeta) CHECK(std::abs(v) < 1e-12);
    }
  }

  TEST_CASE("an exact power law gives zeta(q) = h q") {
    const double h = 0.37;
    const auto p = pyramid_from(1, 12, [h](int j, std::size_t) { return std::exp2(-h * j); });
    const auto grid = MomentGrid::from({0.5, 1.0, 2.0, 5.0});
    const auto z = scaling_function(structure_functions(coefficient_field(p), grid), 3, 11);
    for (std::size_t i = 0; i < grid.q.size(); ++i) CHECK(std::abs(z.zeta[i] - h * grid.q[i]) < 1e-10);
    // Leaders of a decreasing power law equal the coefficient itself.
    const auto grid_all = MomentGrid::linspace(-3.0, 3.0, 7);
    const auto zl = scaling_function(structure_functions(wavelet_leaders(p), grid_all), 3, 8);
    for (std::size_t i = 0; i < grid_all.q.size(); ++i) CHECK(std::abs(zl.zeta[i] - h * grid_all.q[i]) < 1e-10);
    CHECK(std::abs(estimate_hmin(p, 3, 11) - h) < 1e-10);
  }

  TEST_CASE("structure functions by hand") {
    // Level 2: |c| = 1, 2, 3, 4 -> S(2, 1) = 2.5, S(2, 2) = 7.5.
    const auto p = pyramid_from(2, 3, [](int j, std::size_t k) { return j == 2 ? static_cast<double>(k + 1) : 1.0; });
    const auto sf = structure_functions(coefficient_field(p), MomentGrid::from({1.0, 2.0}));
    const auto r = sf.scale_index(2);
    CHECK(sf.counts[r] == 4);
    CHECK(sf.values[r][0] == doctest::Approx(2.5));
    CHECK(sf.values[r][1] == doctest::Approx(7.5));
    CHECK(sf.log2_values[r][1] == doctest::Approx(std::log2(7.5)));
    CHECK_THROWS_AS(sf.scale_index(7), Error);
  }

  TEST_CASE("negative moments drop zeros and flag unreliable levels") {
    // Level 3 has one zero out of 8.
    const auto p = pyramid_from(1, 8, [](int j, std::size_t k) { return (j == 3 && k == 5) ? 0.0 : 1.0; });
    const auto field = coefficient_field(p);
    CHECK_THROWS_AS(structure_functions(field, MomentGrid::from({-1.0, 1.0})), Error);
    // Build a leader-like field by hand to exercise q < 0.
    std::vector<FieldLevel> levels;
    for (int j = 1; j <= 8; ++j) {
      FieldLevel lvl;
      lvl.j = j;
      const auto c = p.coeffs(j);
      lvl.values.assign(c.begin(), c.end());
      lvl.complete.assign(c.size(), 1);
      levels.push_back(std::move(lvl));
    }
    const MultiscaleField leaders(FieldKind::Leaders, std::move(levels), 1, 8);
    const auto sf = structure_functions(leaders, MomentGrid::from({-2.0, 2.0}));
    const auto r = sf.scale_index(3);
    CHECK(sf.zero_counts[r] == 1);
    CHECK(sf.unreliable_negative_q[r] == 1);
    CHECK(sf.unreliable_negative_q[sf.scale_index(4)] == 0);
    CHECK(sf.values[r][0] == doctest::Approx(1.0));
    CHECK(sf.values[r][1] == doctest::Approx(7.0 / 8.0));
  }

  TEST_CASE("an all-zero field has no negative moments") {
    const auto p = pyramid_from(1, 9, [](int, std::size_t) { return 0.0; });
    try {
      structure_functions(wavelet_leaders(p), MomentGrid::from({-1.0, 1.0}));
      FAIL("expected AllZeroAtNegativeQ");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::AllZeroAtNegativeQ);
    }
    const auto sf = structure_functions(wavelet_leaders(p), MomentGrid::from({1.0, 2.0}));
    try {
      scaling_function(sf, 3, 5);
      FAIL("expected AllZeroLevel");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::AllZeroLevel);
    }
  }

  TEST_CASE("scale ranges need three scales inside the field") {
    const auto p = pyramid_from(1, 10, [](int, std::size_t) { return 1.0; });
    const auto sf = structure_functions(wavelet_leaders(p), MomentGrid::from({1.0}));
    CHECK_THROWS_AS(scaling_function(sf, 3, 4), Error);
    // Leaders stop being valid four levels above the finest.
    CHECK_THROWS_AS(scaling_function(sf, 4, 7), Error);
    CHECK_NOTHROW(scaling_function(sf, 4, 6));
    CHECK_THROWS_AS(estimate_hmin(p, 8, 12), Error);
  }

  TEST_CASE("white noise coefficients scale like q / 2") {
    const auto p = decompose(white_noise(std::size_t{1} << 16, 21), WaveletSpec::daubechies(3), 1);
    const auto grid = MomentGrid::from({0.5, 1.0, 2.0, 3.0, 5.0});
    const auto z = scaling_function(structure_functions(coefficient_field(p), grid), 6, 13);
    for (std::size_t i = 0; i < grid.q.size(); ++i) CHECK(std::abs(z.zeta[i] + grid.q[i] / 2.0) < 0.01 + 0.015 * grid.q[i]);
    // H_min of white noise is -1/2 up to the log correction of the maximum.
    CHECK(std::abs(estimate_hmin(p, 6, 13) + 0.5) < 0.15);
  }

  TEST_CASE("fBm leaders scale like H q") {
    SynthesisConfig cfg;
    cfg.model = FbmModel{0.7};
    cfg.length = std::size_t{1} << 16;
    cfg.seed = 22;
    const auto p = decompose(gen_fbm(cfg), WaveletSpec::daubechies(3), 1);
    const auto grid = MomentGrid::from({-2.0, 1.0, 2.0});
    const auto z = scaling_function(structure_functions(wavelet_leaders(p), grid), 6, 11);
    for (std::size_t i = 0; i < grid.q.size(); ++i) CHECK(std::abs(z.zeta[i] - 0.7 * grid.q[i]) < 0.1 * std::abs(grid.q[i]));
    CHECK(std::abs(estimate_hmin(p, 6, 12) - 0.7) < 0.15);
  }

  TEST_CASE("moments are ordered: (S(j, q))^(1/q) grows with q") {
    std::mt19937_64 rng(23);
    std::lognormal_distribution<double> lognormal(0.0, 1.5);
    const auto p = pyramid_from(1, 9, [&](int, std::size_t) { return lognormal(rng); });
    const auto grid = MomentGrid::linspace(0.25, 6.0, 24);
    const auto sf = structure_functions(coefficient_field(p), grid);
    for (std::size_t r = 0; r < sf.scales.size(); ++r) {
      for (std::size_t i = 1; i < grid.q.size(); ++i) {
        CHECK(sf.log2_values[r][i] / grid.q[i] >= sf.log2_values[r][i - 1] / grid.q[i - 1] - 1e-12);
      }
    }
  }

  TEST_CASE("admissibility") {
    ScalingFunction z;
    z.q = {0.5, 1.0, 2.0, 4.0};
    z.zeta = {0.2, 0.35, 0.5, 0.4};
    auto a = p_admissibility(z);
    CHECK(a.exists_positive);
    REQUIRE(a.best_p.has_value());
    CHECK(*a.best_p == 0.5);
    CHECK(a.slope_at_zero == doctest::Approx(0.3));

    z.zeta = {-0.1, -0.2, -0.4, -0.8};
    a = p_admissibility(z);
    CHECK_FALSE(a.exists_positive);
    CHECK_FALSE(a.best_p.has_value());

    z.q = {2.0, 4.0};
    z.zeta = {1.0, 2.0};
    CHECK_THROWS_AS(p_admissibility(z), Error);
  }

  TEST_CASE("moment grids") {
    const auto g = MomentGrid::linspace(-8.0, 8.0, 64);
    CHECK(g.q.size() == 64);
    CHECK(g.q.front() == -8.0);
    CHECK(g.q.back() == 8.0);
    CHECK(MomentGrid::from({3.0, -1.0, 2.0}).q == std::vector<double>{-1.0, 2.0, 3.0});
    CHECK_THROWS_AS(MomentGrid::linspace(1.0, 0.0, 4), Error);
    CHECK_THROWS_AS(MomentGrid::from({}), Error);
    CHECK_THROWS_AS(MomentGrid::from({NAN}), Error);
  }
}
