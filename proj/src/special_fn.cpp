#include "maxmean/special_fn.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "maxmean/errors.hpp"
#include "tree_series.hpp"

namespace maxmean {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kBranchTerms = 40;

// Coefficients mu_k of W0(y) = sum mu_k p^k with p = sqrt(2(1 + e y)),
// from the Corless et al. recurrence.
constexpr std::array<double, kBranchTerms> make_branch_series() {
  std::array<double, kBranchTerms> mu{};
  std::array<double, kBranchTerms> alpha{};
  mu[0] = -1.0;
  mu[1] = 1.0;
  alpha[0] = 2.0;
  alpha[1] = -1.0;
  for (int k = 2; k < kBranchTerms; ++k) {
    double a = 0.0;
    for (int j = 2; j < k; ++j) a += mu[j] * mu[k + 1 - j];
    alpha[k] = a;
    mu[k] = (k - 1.0) / (k + 1.0) * (mu[k - 2] / 2.0 + alpha[k - 2] / 4.0) - alpha[k] / 2.0 -
            mu[k - 1] / (k + 1.0);
  }
  return mu;
}

constexpr auto kBranchSeries = make_branch_series();

double branch_series(double p) {
  double acc = 0.0;
  for (int k = kBranchTerms - 1; k >= 0; --k) acc = acc * p + kBranchSeries[k];
  return acc;
}

constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// B_2, B_4, ..., B_20
constexpr std::array<double, 10> kBernoulliEven = {
    1.0 / 6.0,     -1.0 / 30.0,    1.0 / 42.0,        -1.0 / 30.0,   5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0,    -3617.0 / 510.0,   43867.0 / 798.0, -174611.0 / 330.0};

}  // namespace

void SeriesPolicy::validate() const {
  if (!(abs_tol > 0.0)) throw DomainError("SeriesPolicy: abs_tol must be positive");
  if (max_terms < 1) throw DomainError("SeriesPolicy: max_terms must be at least 1");
}

void BranchPointPolicy::validate() const {
  if (!(switch_radius > 0.0 && switch_radius < 1.0))
    throw DomainError("BranchPointPolicy: switch_radius must lie in (0, 1)");
  if (!(newton_tol > 0.0)) throw DomainError("BranchPointPolicy: newton_tol must be positive");
  if (max_iters < 1) throw DomainError("BranchPointPolicy: max_iters must be at least 1");
}

double lambert_w0(double y, const BranchPointPolicy& policy) {
  policy.validate();
  if (std::isnan(y)) throw DomainError("lambert_w0: argument is NaN");
  if (y == std::numeric_limits<double>::infinity()) return y;
  if (y == 0.0) return 0.0;

  const double gap = y + detail::kInvE;
  if (gap < 0.0) {
    // One ulp of slack for arguments that were meant to be -1/e.
    if (gap >= -kEps * detail::kInvE) return -1.0;
    throw DomainError("lambert_w0: argument below -1/e");
  }
  if (gap < policy.switch_radius) {
    return branch_series(std::sqrt(2.0 * std::numbers::e * gap));
  }

  // Winitzki's initial guess, then Halley on w e^w - y.
  const double l = std::log1p(y);
  double w = l * (1.0 - std::log1p(l) / (2.0 + l));
  for (int it = 0; it < policy.max_iters; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - y;
    if (f == 0.0) return w;
    const double wp1 = w + 1.0;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= step;
    if (std::fabs(step) <= 4.0 * kEps * std::fabs(w)) {
      const double residual = std::fabs(w * std::exp(w) - y);
      if (residual <= policy.newton_tol * std::fabs(y)) return w;
      break;
    }
  }
  throw ConvergenceError("lambert_w0: Halley iteration did not converge");
}

SeriesValue tree_fn(double y, const SeriesPolicy& policy) {
  if (std::isnan(y) || y < 0.0 || y > detail::kInvE * (1.0 + 2.0 * kEps))
    throw DomainError("tree_fn: argument outside [0, 1/e]");
  policy.validate();
  if (y == 0.0) return {};
  const double log_r = std::fmin(0.0, 1.0 + std::log(y));
  return detail::sum_tree_series(log_r, 1.0, 1.0, policy, [](std::int64_t) { return 0.0; });
}

double conjugate_t(double x, const BranchPointPolicy& policy) {
  policy.validate();
  if (std::isnan(x) || x < 0.0) throw DomainError("conjugate_t: argument must be nonnegative");
  if (x <= 1.0) return x;
  if (x == std::numeric_limits<double>::infinity()) return 0.0;

  const double q = x - 1.0;
  if (q < policy.switch_radius) {
    // t = -W0(-x e^-x); 1 + e(-x e^-x) = -expm1(log1p(q) - q).
    const double d = std::log1p(q) - q;
    return -branch_series(std::sqrt(-2.0 * std::expm1(d)));
  }

  // Solve log t - t + s = 0 with s = x - log x. The left side is concave and
  // increasing on (0, 1), so Newton from t0 = e^-s < t increases monotonically.
  const double s = x - std::log(x);
  double t = std::exp(-s);
  if (t < std::numeric_limits<double>::min()) return t;
  double last_step = std::numeric_limits<double>::infinity();
  for (int it = 0; it < policy.max_iters; ++it) {
    const double phi = std::log(t) - t + s;
    const double step = t * phi / (1.0 - t);
    // Steps shrink quadratically until rounding in phi (amplified by
    // 1/(1-t)) dominates; stop there and let the residual decide.
    const bool at_floor = std::fabs(step) >= last_step;
    if (!at_floor) t -= step;
    last_step = std::fabs(step);
    if (at_floor || std::fabs(step) <= 4.0 * kEps * t) {
      const double residual = std::fabs(std::log(t) - t + s);
      if (residual <= policy.newton_tol * s) return t;
      break;
    }
  }
  throw ConvergenceError("conjugate_t: Newton iteration did not converge");
}

double log_gamma(double x) {
  if (std::isnan(x) || x <= 0.0) throw DomainError("log_gamma: argument must be positive");
  if (x < 0.5) {
    // Reflection.
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma(1.0 - x);
  }
  const double z = x - 1.0;
  double a = kLanczos[0];
  const double t = z + 7.5;
  for (int i = 1; i < 9; ++i) a += kLanczos[i] / (z + i);
  return detail::kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(a);
}

double gamma_fn(double x) {
  if (std::isnan(x) || x <= 0.0) throw DomainError("gamma_fn: argument must be positive");
  if (x <= 21.0 && x == std::floor(x)) {
    double f = 1.0;
    for (int i = 2; i < static_cast<int>(x); ++i) f *= i;
    return f;
  }
  return std::exp(log_gamma(x));
}

double hurwitz_zeta(double s, double a) {
  if (!(s > 1.0) || !(a > 0.0)) throw DomainError("hurwitz_zeta: need s > 1 and a > 0");
  double sum = 0.0;
  double b = a;
  while (b < 20.0) {
    sum += std::pow(b, -s);
    b += 1.0;
  }
  // Euler-Maclaurin remainder at b >= 20.
  sum += std::pow(b, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(b, -s);
  double rising = s;  // s (s+1) ... (s + 2j - 2)
  double fact = 2.0;  // (2j)!
  double power = std::pow(b, -s - 1.0);
  for (int j = 1; j <= static_cast<int>(kBernoulliEven.size()); ++j) {
    const double term = kBernoulliEven[j - 1] / fact * rising * power;
    sum += term;
    if (std::fabs(term) <= kEps * std::fabs(sum)) break;
    rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
    fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
    power /= b * b;
  }
  return sum;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

}  // namespace maxmean
