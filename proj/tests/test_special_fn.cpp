#include <doctest.h>

#include <cmath>
#include <limits>

#include "maxmean/errors.hpp"
#include "maxmean/special_fn.hpp"
#include "oracles.hpp"

using namespace maxmean;

TEST_SUITE("special_fn") {

TEST_CASE("lambert_w0 at known points") {
  CHECK(lambert_w0(0.0) == 0.0);
  CHECK(lambert_w0(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(lambert_w0(-0.1) == doctest::Approx(oracle::frozen::w0_minus_0_1).epsilon(1e-15));
  CHECK(lambert_w0(-1.0 / std::exp(1.0)) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("lambert_w0 clamps one ulp below the branch point") {
  const double b = -std::exp(-1.0);
  CHECK(lambert_w0(std::nextafter(b, -1.0)) == doctest::Approx(-1.0).epsilon(1e-7));
  CHECK_THROWS_AS(lambert_w0(-0.5), DomainError);
  CHECK_THROWS_AS(lambert_w0(std::nan("")), DomainError);
}

TEST_CASE("lambert_w0 against bisection on both sides of the switch") {
  for (double y = -0.3678; y < 0.0; y += 0.0071) {
    CAPTURE(y);
    CHECK(lambert_w0(y) == doctest::Approx(oracle::lambert(y)).epsilon(1e-12));
  }
}

TEST_CASE("lambert_w0 satisfies its defining equation for large arguments") {
  for (double y : {1.0, 10.0, 1e3, 1e10, 1e100, 1e300}) {
    const double w = lambert_w0(y);
    CHECK(std::log(w) + w == doctest::Approx(std::log(y)).epsilon(1e-14));
  }
}

TEST_CASE("tree function") {
  const SeriesValue h = tree_fn(0.2);
  CHECK(h.tail_bound <= 1e-12);
  CHECK(std::fabs(h.sum - oracle::frozen::tree_0_2) <= h.tail_bound + 1e-16);
  CHECK(tree_fn(0.0).sum == 0.0);
  CHECK(tree_fn(0.3).sum == doctest::Approx(-lambert_w0(-0.3)).epsilon(1e-12));
  CHECK_THROWS_AS(tree_fn(0.4), DomainError);
  CHECK_THROWS_AS(tree_fn(-0.1), DomainError);
}

TEST_CASE("conjugate point") {
  CHECK(conjugate_t(0.3) == 0.3);
  CHECK(conjugate_t(1.0) == 1.0);
  CHECK(conjugate_t(2.0) == doctest::Approx(oracle::frozen::t_of_2).epsilon(1e-15));
  CHECK(conjugate_t(4.0) == doctest::Approx(oracle::frozen::t_of_4).epsilon(1e-15));
  CHECK(conjugate_t(std::numeric_limits<double>::infinity()) == 0.0);
  CHECK_THROWS_AS(conjugate_t(-1.0), DomainError);
}

TEST_CASE("conjugate point against bisection") {
  for (double x : {1.0001, 1.01, 1.049, 1.05, 1.051, 1.0517, 1.2, 3.0, 10.0, 50.0, 300.0, 700.0}) {
    CAPTURE(x);
    const double t = conjugate_t(x);
    CHECK(t == doctest::Approx(oracle::conjugate(x)).epsilon(1e-12));
    CHECK(t <= 1.0);
  }
}

TEST_CASE("conjugate point next to one") {
  // Bisection is ill-conditioned here; 50-digit values instead.
  CHECK(conjugate_t(1.000000000001) == doctest::Approx(0.9999999999989999110994183).epsilon(1e-15));
  CHECK(conjugate_t(1.00000001) == doctest::Approx(0.9999999900000001274413751).epsilon(1e-15));
  CHECK(conjugate_t(1.0001) == doctest::Approx(0.9999000066662222658241912).epsilon(1e-15));
  CHECK(conjugate_t(1.0517) == doctest::Approx(0.9500227471430993137196654).epsilon(1e-15));
}

TEST_CASE("gamma functions") {
  CHECK(gamma_fn(5.0) == 24.0);
  CHECK(gamma_fn(21.0) == 2432902008176640000.0);
  CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
  for (double x : {0.1, 0.7, 1.5, 3.3, 12.5, 100.25})
    CHECK(log_gamma(x) == doctest::Approx(std::lgamma(x)).epsilon(1e-13));
  CHECK_THROWS_AS(log_gamma(0.0), DomainError);
}

TEST_CASE("hurwitz zeta") {
  CHECK(hurwitz_zeta(2.0, 1.0) == doctest::Approx(M_PI * M_PI / 6.0).epsilon(1e-15));
  CHECK(hurwitz_zeta(4.0, 1.0) == doctest::Approx(std::pow(M_PI, 4) / 90.0).epsilon(1e-15));
  // zeta(s, a) - zeta(s, a + 1) = a^-s
  CHECK(hurwitz_zeta(1.5, 0.3) - hurwitz_zeta(1.5, 1.3) == doctest::Approx(std::pow(0.3, -1.5)).epsilon(1e-13));
  CHECK_THROWS_AS(hurwitz_zeta(1.0, 1.0), DomainError);
}

TEST_CASE("normal cdf") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-14));
  CHECK(normal_cdf(-40.0) >= 0.0);
}

TEST_CASE("policies validate") {
  CHECK_THROWS_AS(lambert_w0(1.0, BranchPointPolicy{0.0, 1e-14, 100}), DomainError);
  CHECK_THROWS_AS(tree_fn(0.1, SeriesPolicy{0.0, 10}), DomainError);
  CHECK_THROWS_AS(tree_fn(0.36, SeriesPolicy{1e-12, 10}), TruncationError);
}

}
