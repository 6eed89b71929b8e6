#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "thermoecon/errors.hpp"
#include "thermoecon/rng.hpp"
#include "thermoecon/sampling.hpp"
#include "thermoecon/stats.hpp"

using namespace thermoecon;

TEST_CASE("seeded rng streams are reproducible") {
  Rng a(42), b(42), c(43);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform01(), y = b.uniform01(), z = c.uniform01();
    all_equal = all_equal && (x == y);
    any_diff = any_diff || (x != z);
    CHECK(x > 0.0);
    CHECK(x < 1.0);
  }
  CHECK(all_equal);
  CHECK(any_diff);
}

TEST_CASE("gamma and beta samplers match their laws") {
  Rng rng(7);
  RunningMoments gamma_stats;
  const int n = 20000;
  for (int i = 0; i < n; ++i) gamma_stats.add(rng.gamma(2.5));
  CHECK(std::fabs(gamma_stats.mean - 2.5) < 3.0 * gamma_stats.stderr_mean());
  CHECK(std::fabs(gamma_stats.variance() - 2.5) < 0.15);

  std::vector<double> beta_draws(8000);
  for (auto& x : beta_draws) x = rng.beta(2.0, 3.0);
  const auto ks = ks_test(beta_draws, [](double x) { return beta_cdf(2.0, 3.0, x); });
  CHECK(ks.p_value > 0.01);

  std::vector<double> small_shape(8000);
  for (auto& x : small_shape) x = rng.beta(0.5, 0.5);
  const auto ks_small = ks_test(small_shape, [](double x) { return beta_cdf(0.5, 0.5, x); });
  CHECK(ks_small.p_value > 0.01);
}

TEST_CASE("cobb-douglas redistribution is an exact beta split") {
  Rng rng(11);
  const CobbDouglas ui{{2.0}}, uj{{3.0}};
  const GoodVector pi{4.0}, pj{6.0};
  RunningMoments share;
  SliceParams params;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    auto [a, b] = sample_redistribution(ui, uj, pi, pj, {0}, params, rng);
    // Shares are written as (x, pool - x): the pool is preserved bitwise.
    CHECK(b[0] == 10.0 - a[0]);
    share.add(a[0]);
  }
  // Beta(2, 3) has mean 2/5, so the share of the pool of 10 averages 4.
  CHECK(std::fabs(share.mean - 4.0) < 3.0 * share.stderr_mean());
}

TEST_CASE("flat agents split the pool uniformly") {
  Rng rng(13);
  const CobbDouglas flat{{1.0}};
  std::vector<double> draws(10000);
  SliceParams params;
  for (auto& x : draws) {
    auto [a, b] = sample_redistribution(flat, flat, GoodVector{5.0}, GoodVector{5.0}, {0}, params,
                                        rng);
    x = a[0];
  }
  const auto ks = ks_test(draws, [](double x) { return x / 10.0; });
  CHECK(ks.p_value > 0.01);
}

TEST_CASE("unexchanged goods pass through untouched") {
  Rng rng(17);
  SliceParams params;
  const CobbDouglas u{{2.0, 3.0}};
  auto [a, b] = sample_redistribution(u, u, GoodVector{1.0, 2.5}, GoodVector{3.0, 4.5}, {0},
                                      params, rng);
  CHECK(a[1] == 2.5);
  CHECK(b[1] == 4.5);
  CHECK(b[0] == 4.0 - a[0]);
}

TEST_CASE("complements redistribution matches the quadrature histogram") {
  // Joint density of agent i's shares (x, y) on [0,2]^2 is proportional to
  // min(x, y) * min(2-x, 2-y) for two alpha = 2 complements agents.
  const int bins = 8;
  const double width = 2.0 / bins;
  std::vector<double> cell_prob(bins * bins, 0.0);
  double norm = 0.0;
  // Cell masses from a 2-D quadrature oracle on a fine subgrid.
  for (int bx = 0; bx < bins; ++bx) {
    for (int by = 0; by < bins; ++by) {
      const double x0 = bx * width, y0 = by * width;
      const auto outer = [&](double x) {
        return oracles::simpson_n(
            [&](double y) { return std::min(x, y) * std::min(2.0 - x, 2.0 - y); }, y0, y0 + width,
            64);
      };
      const double mass = oracles::simpson_n(outer, x0, x0 + width, 64);
      cell_prob[bx * bins + by] = mass;
      norm += mass;
    }
  }
  for (double& p : cell_prob) p /= norm;

  Rng rng(19);
  SliceParams params;
  const Complements u{2.0, {0, 1}};
  const GoodVector pi{1.0, 1.0}, pj{1.0, 1.0};
  const int n = 20000;
  std::vector<double> counts(bins * bins, 0.0);
  for (int i = 0; i < n; ++i) {
    auto [a, b] = sample_redistribution(u, u, pi, pj, {0, 1}, params, rng);
    int bx = std::min(bins - 1, static_cast<int>(a[0] / width));
    int by = std::min(bins - 1, static_cast<int>(a[1] / width));
    counts[bx * bins + by] += 1.0;
  }
  double chi2 = 0.0;
  int dof = 0;
  for (int c = 0; c < bins * bins; ++c) {
    const double expected = n * cell_prob[c];
    if (expected < 5.0) continue;
    chi2 += (counts[c] - expected) * (counts[c] - expected) / expected;
    ++dof;
  }
  CHECK(chi_squared_sf(chi2, dof - 1) > 0.001);
}

TEST_CASE("redistribution with no support raises a sampling error") {
  Rng rng(23);
  SliceParams params;
  // Both agents need matched goods but the pool has none of good 1.
  const Complements u{3.0, {0, 1}};
  CHECK_THROWS_AS(sample_redistribution(u, u, GoodVector{2.0, 0.0}, GoodVector{2.0, 0.0}, {0},
                                        params, rng),
                  SamplingError);
}

TEST_CASE("budget line sampling") {
  Rng rng(29);
  SUBCASE("zero wealth collapses to the origin") {
    const GoodVector out = sample_budget_line(CobbDouglas{{2.0, 2.0}}, 0.0, 1.0, rng);
    CHECK(out[0] == 0.0);
    CHECK(out[1] == 0.0);
  }
  SUBCASE("flat utility is uniform along the line") {
    std::vector<double> draws(8000);
    for (auto& g : draws) g = sample_budget_line(CobbDouglas{{1.0, 1.0}}, 10.0, 1.0, rng)[1];
    const auto ks = ks_test(draws, [](double g) { return g / 10.0; });
    CHECK(ks.p_value > 0.01);
  }
  SUBCASE("complements density peaks at the matched point") {
    // Density on the line m = 4 - g is min(4-g, g); piecewise-linear CDF.
    const auto cdf = [](double g) {
      if (g <= 2.0) return g * g / 8.0;
      return 1.0 - (4.0 - g) * (4.0 - g) / 8.0;
    };
    std::vector<double> draws(8000);
    for (auto& g : draws) g = sample_budget_line(Complements{2.0, {0, 1}}, 4.0, 1.0, rng)[1];
    const auto ks = ks_test(draws, cdf);
    CHECK(ks.p_value > 0.01);
  }
  SUBCASE("cobb-douglas money share follows Beta(alpha_m, alpha_g)") {
    std::vector<double> draws(8000);
    for (auto& g : draws) g = sample_budget_line(CobbDouglas{{2.0, 3.0}}, 6.0, 2.0, rng)[0] / 6.0;
    const auto ks = ks_test(draws, [](double x) { return beta_cdf(2.0, 3.0, x); });
    CHECK(ks.p_value > 0.01);
  }
  SUBCASE("budget identity holds to rounding") {
    for (int i = 0; i < 200; ++i) {
      const GoodVector out = sample_budget_line(Complements{1.5, {0, 1}}, 7.0, 0.5, rng);
      CHECK(out[0] >= 0.0);
      CHECK(out[1] >= 0.0);
      CHECK(std::fabs(out[0] + 0.5 * out[1] - 7.0) <= 1e-12 * 7.0);
    }
  }
  SUBCASE("negative wealth is rejected") {
    CHECK_THROWS_AS(sample_budget_line(CobbDouglas{{1.0, 1.0}}, -1.0, 1.0, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(sample_budget_line(CobbDouglas{{1.0, 1.0}}, 1.0, 0.0, rng),
                    std::invalid_argument);
  }
}

TEST_CASE("money split against a flat pot") {
  Rng rng(31);
  SliceParams params;
  // Cobb-Douglas: the kept share of the pool is Beta(alpha, 1).
  std::vector<double> draws(8000);
  for (auto& x : draws)
    x = sample_money_split(CobbDouglas{{2.0}}, GoodVector{3.0}, 5.0, params, rng) / 5.0;
  const auto ks = ks_test(draws, [](double x) { return beta_cdf(2.0, 1.0, x); });
  CHECK(ks.p_value > 0.01);

  // Slice path for a non-Cobb-Douglas agent stays within the pool.
  for (int i = 0; i < 100; ++i) {
    const double x =
        sample_money_split(Complements{2.0, {0, 1}}, GoodVector{1.0, 3.0}, 4.0, params, rng);
    CHECK(x >= 0.0);
    CHECK(x <= 4.0);
  }
}
