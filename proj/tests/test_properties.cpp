#include <doctest.h>

#include <cmath>
#include <random>

#include "maxmean/distribution.hpp"
#include "maxmean/genpoisson.hpp"
#include "maxmean/ruin.hpp"
#include "maxmean/special_fn.hpp"
#include "oracles.hpp"

using namespace maxmean;

namespace {

// Seeded draws; every property runs kCases random cases.
constexpr int kCases = 300;

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  // Log-uniform, for parameters spanning orders of magnitude.
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  }
};

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("conjugate point solves its equation and stays below one") {
  Gen g(1);
  for (int i = 0; i < kCases; ++i) {
    const double x = 1.0 + g.log_uniform(1e-10, 500.0);
    CAPTURE(x);
    const double t = conjugate_t(x);
    CHECK(t > 0.0);
    CHECK(t < 1.0);
    CHECK(std::log(t) - t == doctest::Approx(std::log(x) - x).epsilon(1e-13));
  }
}

TEST_CASE("lambert w inverts w e^w") {
  Gen g(2);
  for (int i = 0; i < kCases; ++i) {
    const double w = g.uniform(-0.999, 30.0);
    CAPTURE(w);
    CHECK(lambert_w0(w * std::exp(w)) == doctest::Approx(w).epsilon(1e-10));
  }
}

TEST_CASE("distribution functions are monotone and bounded") {
  Gen g(3);
  for (int i = 0; i < kCases; ++i) {
    const double a = g.uniform(0.0, 12.0);
    const double b = a + g.log_uniform(1e-6, 5.0);
    const std::int64_t n = g.integer(1, 200);
    const ShiftedParam p{g.uniform(-0.95, 5.0)};
    CAPTURE(a);
    CAPTURE(b);
    CAPTURE(n);
    CHECK(cdf_inf(a) <= cdf_inf(b));
    CHECK(cdf_finite(a, n) <= cdf_finite(b, n) + 1e-15);
    CHECK(cdf_shifted_inf(a, p) <= cdf_shifted_inf(b, p));
    CHECK(cdf_m2(a) <= cdf_m2(b));
    for (double v : {cdf_inf(a), cdf_finite(a, n), cdf_shifted_inf(a, p), cdf_m2(a), cdf_shifted(a, n, p)}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("deeper maxima are stochastically larger") {
  Gen g(4);
  for (int i = 0; i < kCases; ++i) {
    const double x = g.uniform(0.0, 8.0);
    const std::int64_t n = g.integer(1, 300);
    CAPTURE(x);
    CAPTURE(n);
    CHECK(cdf_finite(x, n + 1) <= cdf_finite(x, n) + 1e-15);
    CHECK(cdf_inf(x) <= cdf_finite(x, n) + 1e-15);
    CHECK(cdf_inf(x) <= cdf_m2(x) + 1e-15);
  }
}

TEST_CASE("quantiles invert distribution functions") {
  Gen g(5);
  for (int i = 0; i < kCases; ++i) {
    const double u = g.uniform(1e-6, 1.0 - 1e-6);
    const ShiftedParam p{g.uniform(-0.9, 10.0)};
    CAPTURE(u);
    CAPTURE(p.lambda);
    CHECK(cdf_inf(quantile_inf(u)) == doctest::Approx(u).epsilon(1e-10));
    CHECK(cdf_shifted_inf(quantile_shifted_inf(u, p), p) == doctest::Approx(u).epsilon(1e-10));
    CHECK(quantile_inf(u) > 1.0);
  }
}

TEST_CASE("density integrates to the distribution function") {
  Gen g(6);
  for (int i = 0; i < 40; ++i) {
    const double a = g.uniform(1.01, 6.0);
    const double b = a + g.uniform(0.01, 2.0);
    // Simpson on 200 panels.
    const int m = 200;
    const double h = (b - a) / m;
    double s = pdf_inf(a).value + pdf_inf(b).value;
    for (int k = 1; k < m; ++k) s += (k % 2 ? 4.0 : 2.0) * pdf_inf(a + k * h).value;
    CAPTURE(a);
    CAPTURE(b);
    CHECK(s * h / 3.0 == doctest::Approx(cdf_inf(b) - cdf_inf(a)).epsilon(1e-8));
  }
}

TEST_CASE("ruin probability falls with capital and loading") {
  Gen g(7);
  for (int i = 0; i < kCases; ++i) {
    const double theta = g.log_uniform(0.01, 10.0);
    const double u = g.uniform(-1.0, 30.0);
    const double du = g.log_uniform(1e-3, 5.0);
    CAPTURE(theta);
    CAPTURE(u);
    const double psi = ruin::ruin_probability({theta, u});
    CHECK(psi >= 0.0);
    CHECK(psi <= 1.0);
    CHECK(ruin::ruin_probability({theta, u + du}) < psi);
    CHECK(ruin::ruin_probability({theta * 1.1, u}) <= psi);
  }
}

TEST_CASE("minimum capital round trip") {
  Gen g(8);
  for (int i = 0; i < kCases; ++i) {
    const double theta = g.log_uniform(0.05, 5.0);
    // Stay below the ruin probability at u -> -c.
    const double c = 1.0 + theta;
    const double r = oracle::conjugate(c) / c;
    const double alpha = g.uniform(1e-6, 0.999 * r * std::exp(c * (1.0 - r)));
    CAPTURE(theta);
    CAPTURE(alpha);
    const double u = ruin::min_capital(alpha, theta);
    CHECK(ruin::ruin_probability({theta, u}) == doctest::Approx(alpha).epsilon(1e-9));
    CHECK(ruin::min_capital_root(alpha, theta) == doctest::Approx(u).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("generalized poisson pmf is a probability") {
  Gen g(9);
  for (int i = 0; i < 60; ++i) {
    const genpoisson::Params p{g.uniform(0.0, 0.95), g.log_uniform(0.05, 20.0)};
    CAPTURE(p.alpha);
    CAPTURE(p.theta);
    const SeriesValue m = genpoisson::total_mass(p);
    CHECK(std::fabs(m.sum - 1.0) <= m.tail_bound + 1e-11);
    const std::int64_t k = g.integer(0, 500);
    CHECK(genpoisson::pmf(k, p) >= 0.0);
  }
}

TEST_CASE("finite moments increase with depth") {
  Gen g(10);
  for (int i = 0; i < 60; ++i) {
    const double alpha = g.uniform(0.2, 4.0);
    const std::int64_t n = g.integer(1, 500);
    CAPTURE(alpha);
    CAPTURE(n);
    CHECK(moment(Depth(n), alpha) < moment(Depth(n + 1), alpha));
    CHECK(moment(Depth(n), alpha) < moment(Depth::infinite(), alpha));
  }
}

}
