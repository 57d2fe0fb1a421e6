#include <doctest.h>

#include <cmath>
#include <numbers>

#include "maxmean/distribution.hpp"
#include "maxmean/errors.hpp"
#include "oracles.hpp"

using namespace maxmean;
namespace fz = oracle::frozen;

TEST_SUITE("distribution") {

TEST_CASE("cdf_inf closed form") {
  CHECK(cdf_inf(0.5) == 0.0);
  CHECK(cdf_inf(1.0) == 0.0);
  CHECK(cdf_inf(-3.0) == 0.0);
  CHECK(cdf_inf(2.0) == doctest::Approx(fz::cdf_inf_2).epsilon(1e-15));
  CHECK(cdf_inf(4.0) == doctest::Approx(fz::cdf_inf_4).epsilon(1e-15));
  CHECK(cdf_inf(1.5) == doctest::Approx(fz::cdf_inf_1_5).epsilon(1e-15));
  CHECK(cdf_inf(800.0) == 1.0);
  CHECK_THROWS_AS(cdf_inf(std::nan("")), DomainError);
}

TEST_CASE("cdf_inf matches the bisection conjugate") {
  for (double x = 1.001; x < 30.0; x *= 1.13) {
    CAPTURE(x);
    CHECK(cdf_inf(x) == doctest::Approx(1.0 - oracle::conjugate(x) / x).epsilon(1e-12));
  }
}

TEST_CASE("survival series equals one on the unit interval") {
  for (double x : {0.0, 0.25, 0.5, 0.9, 0.99, 1.0}) {
    CAPTURE(x);
    const SeriesValue s = survival_series(x);
    CHECK(std::fabs(s.sum - 1.0) <= s.tail_bound + 1e-14);
    CHECK(s.tail_bound <= 1e-10);
  }
  CHECK(survival_series(0.0).terms == 1);
}

TEST_CASE("survival series tail bound covers the brute-force remainder") {
  for (double x : {0.5, 2.0, 3.0}) {
    const SeriesValue partial = survival_partial_sum(x, 20);
    const double far = oracle::survival_sum(x, 4000);
    CAPTURE(x);
    CHECK(std::fabs(partial.sum - oracle::survival_sum(x, 20)) < 1e-14);
    CHECK(far - partial.sum <= partial.tail_bound * (1.0 + 1e-9));
  }
}

TEST_CASE("survival series refuses to certify right next to one") {
  CHECK_THROWS_AS(survival_series(1.0005), TruncationError);
  CHECK_THROWS_AS(survival_series(0.9995), TruncationError);
  CHECK_THROWS_AS(survival_series(-0.1), DomainError);
  CHECK_NOTHROW(survival_partial_sum(1.0005, 100));
}

TEST_CASE("series form of cdf_inf agrees with the closed form") {
  for (double x : {1.1, 2.0, 4.0, 9.0})
    CHECK(cdf_inf_series(x) == doctest::Approx(cdf_inf(x)).epsilon(2e-12));
}

TEST_CASE("density") {
  const DensityValue at_one = pdf_inf(1.0);
  CHECK(at_one.value == 2.0);
  CHECK(at_one.right_limit);
  CHECK(pdf_inf(0.7).value == 0.0);
  for (double x : {1.02, 1.5, 2.0, 5.0, 9.5}) {
    CAPTURE(x);
    const double fd = oracle::central_difference([](double y) { return 1.0 - oracle::conjugate(y) / y; }, x);
    CHECK(pdf_inf(x).value == doctest::Approx(fd).epsilon(1e-7));
    CHECK_FALSE(pdf_inf(x).right_limit);
  }
  // Right limit at 1 is approached continuously.
  CHECK(pdf_inf(1.0 + 1e-7).value == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("quantiles") {
  CHECK(quantile_inf(0.95) == doctest::Approx(fz::quantile_0_95).epsilon(1e-15));
  CHECK(upper_percentage_point(0.05) == doctest::Approx(fz::quantile_0_95).epsilon(1e-15));
  CHECK(quantile_inf(1e-12) == doctest::Approx(1.0).epsilon(1e-11));
  CHECK_THROWS_AS(quantile_inf(0.0), DomainError);
  CHECK_THROWS_AS(quantile_inf(1.0), DomainError);
  CHECK_THROWS_AS(upper_percentage_point(1.5), DomainError);
}

TEST_CASE("finite-depth distribution") {
  CHECK(cdf_finite(1.0, 5) == doctest::Approx(fz::cdf_5_at_1).epsilon(1e-14));
  CHECK(cdf_finite(2.0, 1) == doctest::Approx(fz::one_minus_e_minus_2).epsilon(1e-15));
  CHECK(cdf(EvalPoint{2.0, Depth(1)}) == doctest::Approx(fz::one_minus_e_minus_2).epsilon(1e-15));
  CHECK(cdf(EvalPoint{2.0, Depth::infinite()}) == cdf_inf(2.0));
  for (std::int64_t n : {2, 7, 40, 300}) {
    for (double x : {0.3, 0.9, 1.0, 1.4, 3.0}) {
      CAPTURE(n);
      CAPTURE(x);
      CHECK(cdf_finite(x, n) == doctest::Approx(oracle::cdf_finite(x, n)).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(cdf_finite(1.0, 0), DomainError);
  CHECK_THROWS_AS(Depth(0), DomainError);
}

TEST_CASE("shifted family") {
  CHECK(cdf_shifted(1.5, 3, {0.5}) == doctest::Approx(fz::cdf_3_shift_half_at_1_5).epsilon(1e-14));
  CHECK(cdf_shifted_inf(2.0, {1.0}) == doctest::Approx(fz::cdf_shifted_inf_2_lambda_1).epsilon(1e-14));
  CHECK(quantile_shifted_inf(0.5, {1.0}) == doctest::Approx(fz::quantile_shifted_half_lambda_1).epsilon(1e-14));
  CHECK(cdf_shifted(1.7, 6, {0.0}) == cdf_finite(1.7, 6));
  CHECK(cdf_shifted_inf(2.5, {0.0}) == doctest::Approx(cdf_inf(2.5)).epsilon(1e-15));
  for (double lambda : {-0.7, 0.25, 2.0}) {
    for (std::int64_t n : {1, 4, 25}) {
      CAPTURE(lambda);
      CAPTURE(n);
      CHECK(cdf_shifted(1.3, n, {lambda}) == doctest::Approx(oracle::cdf_shifted(1.3, n, lambda)).epsilon(1e-12));
    }
    const SeriesValue s = shifted_survival_series(2.2, {lambda});
    CHECK(1.0 - s.sum == doctest::Approx(cdf_shifted_inf(2.2, {lambda})).epsilon(1e-11));
  }
  CHECK_THROWS_AS(cdf_shifted_inf(2.0, {-1.0}), DomainError);
  CHECK_THROWS_AS(quantile_shifted_inf(0.5, {-2.0}), DomainError);
}

TEST_CASE("distribution of the supremum from index two") {
  CHECK(cdf_m2(1.5) == doctest::Approx(fz::cdf_m2_1_5).epsilon(1e-14));
  CHECK(cdf_m2(3.0) == doctest::Approx(fz::cdf_m2_3).epsilon(1e-14));
  CHECK(cdf_m2(0.5) == 0.0);
  CHECK(cdf_m2(60.0) == 1.0);
  CHECK(cdf_m2(2.0) >= cdf_inf(2.0));
}

TEST_CASE("moments") {
  const double pi2_6 = std::numbers::pi * std::numbers::pi / 6.0;
  const double mean = moment(Depth::infinite(), 1.0);
  CHECK(mean == doctest::Approx(pi2_6).epsilon(1e-13));
  CHECK(moment(Depth::infinite(), 2.0) - mean * mean == doctest::Approx(fz::variance_inf).epsilon(1e-12));
  CHECK(moment(Depth(3), 1.0) == 49.0 / 36.0);
  CHECK(moment(Depth(1), 2.5) == doctest::Approx(std::tgamma(3.5)).epsilon(1e-14));
  for (std::int64_t n : {2, 10, 80})
    for (double alpha : {0.5, 1.0, 3.0})
      CHECK(moment(Depth(n), alpha) == doctest::Approx(oracle::moment_finite(n, alpha)).epsilon(1e-12));
  // Finite depths increase to the limit.
  CHECK(moment(Depth(5000), 1.5) < moment(Depth::infinite(), 1.5));
  CHECK(moment(Depth(5000), 1.5) == doctest::Approx(moment(Depth::infinite(), 1.5)).epsilon(1e-3));
  CHECK_THROWS_AS(moment(Depth::infinite(), 0.0), DomainError);
  CHECK_THROWS_AS(moment(Depth::infinite(), 400.0), DomainError);
}

}
