#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wsmf/error.hpp"
#include "wsmf/sparsity.hpp"

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

// 2^{ceil(d j)} unit spikes per level, spread over the level; the rest is fill(j).
template <typename F>
CoefficientPyramid spikes(double d, int jf, F&& fill) {
  return pyramid_from(1, jf, [&](int j, std::size_t k) {
    const auto count = std::size_t{1} << static_cast<int>(std::ceil(d * j));
    const std::size_t step = (std::size_t{1} << j) / count;
    return k % step == 0 ? 1.0 : fill(j);
  });
}

void check_split_invariants(const CoefficientPyramid& p, const SparsitySplit& split) {
  for (const auto& lvl : split.levels) {
    const auto c = p.interior_coeffs(lvl.j);
    CHECK(lvl.small + lvl.large_set.size() == lvl.total);
    CHECK(lvl.small_set.size() == lvl.small);
    CHECK(lvl.total == c.size());
    double sum = 0.0;
    double small_max = 0.0;
    for (std::size_t k : lvl.small_set) {
      sum += std::pow(std::abs(c[k]), split.q);
      small_max = std::max(small_max, std::abs(c[k]));
    }
    CHECK(sum == doctest::Approx(lvl.small_sum));
    CHECK(lvl.small_sum <= lvl.budget);
    double large_min = INFINITY;
    for (std::size_t k : lvl.large_set) large_min = std::min(large_min, std::abs(c[k]));
    if (!lvl.large_set.empty()) {
      // Tight: the smallest large coefficient no longer fits the budget.
      CHECK(small_max <= large_min);
      CHECK(lvl.small_sum + std::pow(large_min, split.q) > lvl.budget);
    }
  }
  const auto small = restrict_to_small(p, split);
  const auto large = restrict_to_large(p, split);
  for (int j = p.j_coarse(); j <= p.j_fine(); ++j) {
    for (std::size_t k = 0; k < p.count(j); ++k) {
      CHECK(small.coeffs(j)[k] + large.coeffs(j)[k] == p.coeffs(j)[k]);
      CHECK((small.coeffs(j)[k] == 0.0 || large.coeffs(j)[k] == 0.0));
    }
  }
}

}  // namespace

TEST_SUITE("sparsity") {
  TEST_CASE("tiny coefficients are absorbed entirely") {
    const auto p = pyramid_from(2, 10, [](int, std::size_t) { return 1e-12; });
    const auto split = sparsity_split(p);
    for (const auto& lvl : split.levels) CHECK(lvl.small == lvl.total);
    CHECK(split.delta == -INFINITY);
    CHECK(split.fit_levels == 0);
  }

  TEST_CASE("lacunary spikes give delta = 1/2") {
    const auto p = spikes(0.5, 16, [](int) { return 0.0; });
    const auto split = sparsity_split(p, 2.0, 1.0, 8, 16);
    CHECK(std::abs(split.delta - 0.5) < 0.05);
    CHECK(split.levels.size() == 9);
    check_split_invariants(p, split);
  }

  TEST_CASE("spikes over a small background give delta = 0.3") {
    const auto p = spikes(0.3, 16, [](int j) { return std::exp2(-static_cast<double>(j)); });
    const auto split = sparsity_split(p, 2.0, 1.0, 8, 16);
    CHECK(std::abs(split.delta - 0.3) < 0.05);
    check_split_invariants(p, split);
  }

  TEST_CASE("split invariants on random pyramids") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.5, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
      const auto p = oracle::random_pyramid(rng, 8);
      const double q = u(rng);
      const double c = u(rng);
      check_split_invariants(p, sparsity_split(p, q, c));
    }
  }

  TEST_CASE("a larger budget absorbs at least as many coefficients") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
      const auto p = oracle::random_pyramid(rng, 8);
      const auto a = sparsity_split(p, 2.0, 0.5);
      const auto b = sparsity_split(p, 2.0, 4.0);
      for (std::size_t i = 0; i < a.levels.size(); ++i) CHECK(a.levels[i].small <= b.levels[i].small);
    }
  }

  TEST_CASE("levels outside the split and boundary coefficients stay large") {
    std::vector<CoefficientPyramid::Level> levels;
    levels.push_back({{0.1, 0.2, 0.3, 0.4}, 2});
    levels.push_back({std::vector<double>(8, 0.01), 8});
    const CoefficientPyramid p(2, std::move(levels), 16);
    const auto split = sparsity_split(p, 2.0, 1.0, 3, 3);
    const auto large = restrict_to_large(p, split);
    CHECK(large.coeffs(2)[3] == 0.4);
    CHECK(large.coeffs(2)[0] == 0.1);
    check_split_invariants(p, split);
  }

  TEST_CASE("admissible p bound") {
    CHECK(admissible_p_bound(0.5, -0.25).value() == doctest::Approx(2.0));
    CHECK(admissible_p_bound(0.0, -0.5).value() == doctest::Approx(2.0));
    CHECK(admissible_p_bound(-INFINITY, -0.5).value() == INFINITY);
    CHECK_FALSE(admissible_p_bound(0.5, 0.1).has_value());
    CHECK_FALSE(admissible_p_bound(0.5, 0.0).has_value());
    try {
      admissible_p_bound(1.0, -0.5);
      FAIL("expected DeltaOutOfRange");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::DeltaOutOfRange);
    }
  }

  TEST_CASE("parameter validation") {
    const auto p = pyramid_from(2, 6, [](int, std::size_t) { return 1.0; });
    try {
      sparsity_split(p, 0.0, 1.0);
      FAIL("expected NonPositiveParams");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::NonPositiveParams);
    }
    CHECK_THROWS_AS(sparsity_split(p, 2.0, -1.0), Error);
    CHECK_THROWS_AS(sparsity_split(p, 2.0, 1.0, 3, 9), Error);
  }
}
