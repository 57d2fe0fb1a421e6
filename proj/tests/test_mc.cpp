#include <doctest.h>

#include <cmath>

#include "kernels.hpp"
#include "maxmean/distribution.hpp"
#include "maxmean/errors.hpp"
#include "maxmean/mc/harness.hpp"
#include "maxmean/mc/reference.hpp"
#include "maxmean/special_fn.hpp"
#include "maxmean/ruin.hpp"
#include "oracles.hpp"

using namespace maxmean;
using namespace maxmean::mc;

namespace {

SimConfig small(std::int64_t samples, std::int32_t workers = 1, std::uint64_t seed = 3) {
  SimConfig cfg;
  cfg.samples = samples;
  cfg.workers = workers;
  cfg.seed = seed;
  return cfg;
}

// Two-sample KS distance.
double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

}  // namespace

TEST_SUITE("mc") {

TEST_CASE("config validation") {
  SimConfig cfg;
  cfg.samples = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = SimConfig{};
  cfg.workers = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  CHECK_THROWS_AS(simulate_running_max(small(10), 0, 0.0), DomainError);
}

TEST_CASE("partition covers the sample range contiguously") {
  const auto blocks = partition(103, 7);
  REQUIRE(blocks.size() == 7);
  CHECK(blocks.front().begin == 0);
  CHECK(blocks.back().end == 103);
  for (std::size_t b = 1; b < blocks.size(); ++b) CHECK(blocks[b].begin == blocks[b - 1].end);
}

TEST_CASE("parallel kernels reproduce the serial reference bit for bit") {
  for (std::int32_t workers : {1, 3, 8}) {
    CAPTURE(workers);
    const auto cfg = small(2000, workers);
    CHECK(simulate_running_max(cfg, 17, 0.3) == reference::simulate_running_max(cfg, 17, 0.3));
    const double grid[] = {0.8, 1.0, 1.7};
    CHECK(kernels::running_max_counts(cfg, 9, 0.0, grid, 2) == reference::running_max_counts(cfg, 9, 0.0, grid, 2));
    const ruin::RiskModel m{0.4, 0.5};
    auto ruin_cfg = cfg;
    ruin_cfg.horizon = 300;
    CHECK(kernels::ruin_count(ruin_cfg, m.premium_rate(), m.capital()) == reference::ruin_count(ruin_cfg, m));
  }
}

TEST_CASE("same config, same numbers") {
  const auto cfg = small(5000, 4, 99);
  const double grid[] = {2.0};
  CHECK(estimate_cdf_inf(cfg, grid)[0].estimate == estimate_cdf_inf(cfg, grid)[0].estimate);
  CHECK(simulate_scaled_tail_max(cfg, 50) == simulate_scaled_tail_max(cfg, 50));
  CHECK(simulate_running_max(small(100, 1, 1), 5, 0.0) != simulate_running_max(small(100, 1, 2), 5, 0.0));
}

TEST_CASE("worker count changes the streams but not the law") {
  const double grid[] = {1.0};
  const auto one = estimate_running_max_cdf(small(200000, 1), 5, 0.0, grid)[0];
  const auto many = estimate_running_max_cdf(small(200000, 6), 5, 0.0, grid)[0];
  CHECK(one.estimate != many.estimate);
  CHECK(std::fabs(one.estimate - many.estimate) < 5.0 * std::hypot(one.std_error, many.std_error));
}

TEST_CASE("depth one is a single exponential") {
  auto values = simulate_running_max(small(20000), 1, 0.0);
  const double d = ks_statistic(values, [](double x) { return x > 0 ? -std::expm1(-x) : 0.0; });
  CHECK(d < ks_critical_value(20000));
}

TEST_CASE("finite-depth estimates cover the closed forms") {
  const auto cfg = small(200000, 2);
  const double x5[] = {1.0};
  CHECK(estimate_running_max_cdf(cfg, 5, 0.0, x5)[0].covers(oracle::frozen::cdf_5_at_1, 4.0));
  const double x3[] = {1.5};
  CHECK(estimate_running_max_cdf(cfg, 3, 0.5, x3)[0].covers(oracle::frozen::cdf_3_shift_half_at_1_5, 4.0));
}

TEST_CASE("limit and sup-from-two estimates with certified bias") {
  const auto cfg = small(100000, 2);
  const double grid[] = {1.2, 2.0, 4.0};
  const auto inf = estimate_cdf_inf(cfg, grid);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(inf[i].bias_bound < 1e-4 + 1e-15);
    CHECK(inf[i].covers(cdf_inf(grid[i]), 4.0));
  }
  const double m2_grid[] = {0.5, 1.5, 3.0};
  const auto m2 = estimate_cdf_m2(cfg, m2_grid);
  CHECK(m2[0].estimate < 1e-3);
  CHECK(m2[1].covers(oracle::frozen::cdf_m2_1_5, 4.0));
  CHECK(m2[2].covers(oracle::frozen::cdf_m2_3, 4.0));
}

TEST_CASE("truncation depth") {
  const double grid[] = {2.0};
  const std::int64_t n = required_depth_inf(grid, 1e-4, 100000);
  CHECK(cdf_finite(2.0, n) - cdf_inf(2.0) <= 1e-4);
  CHECK(cdf_finite(2.0, n - 1) - cdf_inf(2.0) > 1e-4);
  const double near_one[] = {1.0005};
  CHECK_THROWS_AS(required_depth_inf(near_one, 1e-4, 100000), DomainError);
  const double slow[] = {1.01};
  CHECK_THROWS_AS(required_depth_inf(slow, 1e-4, 50), DepthError);
  CHECK(m2_truncation_bound(3.0, 10) == doctest::Approx(std::exp(-11 * (2 - std::log(3.0))) /
                                                        (1 - std::exp(-(2 - std::log(3.0))))));
}

TEST_CASE("ruin frequencies") {
  auto cfg = small(100000, 2);
  cfg.horizon = 400;
  const auto at_zero = estimate_ruin(cfg, {1.0, 0.0});
  CHECK(at_zero.covers(oracle::frozen::ruin_theta1_u0, 4.0));
  const auto at_quoted = estimate_ruin(cfg, {0.5, oracle::frozen::min_capital_half_half});
  CHECK(at_quoted.covers(0.5, 4.0));
  CHECK(estimate_ruin(cfg, {0.5, 60.0}).estimate < 1e-3);
  CHECK(ruin_horizon_bound({1.0, 0.0}, 400) < 1e-40);
  CHECK_THROWS_AS(estimate_ruin(cfg, {0.0, 0.0}), SolvencyError);
}

TEST_CASE("half-normal reference") {
  CHECK(half_normal_cdf(0.0) == 0.0);
  CHECK(half_normal_cdf(-1.0) == 0.0);
  CHECK(half_normal_cdf(INFINITY) == 1.0);
  CHECK(half_normal_cdf(1.0) == doctest::Approx(2 * normal_cdf(1.0) - 1).epsilon(1e-15));
}

TEST_CASE("KS statistic") {
  std::vector<double> s = {0.5};
  CHECK(ks_statistic(s, [](double x) { return x; }) == 0.5);
  std::vector<double> u = {0.1, 0.3, 0.5, 0.7, 0.9};
  CHECK(ks_statistic(u, [](double x) { return x; }) == doctest::Approx(0.1));
  CHECK(ks_critical_value(10000) == doctest::Approx(0.0163));
}

TEST_CASE("chunked tail maximum has the law of the naive full path") {
  auto cfg = small(3000, 1, 5);
  cfg.trajectory_multiple = 20;
  const auto chunked = simulate_scaled_tail_max(cfg, 200);
  cfg.seed = 6;
  const auto naive = reference::simulate_scaled_tail_max(cfg, 200);
  // Two-sample 1% critical value.
  CHECK(ks_two_sample(chunked, naive) < 1.63 * std::sqrt(2.0 / 3000.0));
}

TEST_CASE("weak convergence test preconditions") {
  CHECK_THROWS_AS(weak_convergence_test(small(10), 999), DomainError);
  CHECK(ks_difference_slack(10000) == doctest::Approx(0.009));
}

}
