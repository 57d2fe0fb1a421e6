#include "maxmean/distribution.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "maxmean/errors.hpp"
#include "maxmean/special_fn.hpp"
#include "tree_series.hpp"

namespace maxmean {

namespace {

constexpr double kRefusalRadius = 1e-3;

void require_number(double x, const char* what) {
  if (std::isnan(x)) throw DomainError(std::string(what) + ": argument is NaN");
}

void require_probability(double u, const char* what) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError(std::string(what) + ": argument must lie in (0, 1)");
}

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

// sum_{k=1..n} k^(k-1)/k! x^(k-1) e^(-kx) times exp(extra(k)), x > 0.
template <typename Extra>
double finite_tree_sum(double x, std::int64_t n, double bound_factor, Extra extra) {
  const double log_r = std::fmin(0.0, detail::log_rate(x));
  double sum = 0.0;
  double comp = 0.0;
  for (std::int64_t k = 1; k <= n; ++k) {
    const double term = std::exp(detail::log_scaled_tree_coeff(k) + static_cast<double>(k) * log_r + extra(k));
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if ((k & 63) == 0 && log_r < 0.0 &&
        bound_factor * detail::stirling_tail_bound(k, log_r) < 1e-18 * sum) {
      break;
    }
  }
  return sum / x;
}

// Bernoulli numbers B_0 .. B_14 (B_1 = -1/2).
constexpr std::array<double, 15> kBernoulli = {
    1.0, -0.5, 1.0 / 6.0, 0.0, -1.0 / 30.0, 0.0, 1.0 / 42.0, 0.0,
    -1.0 / 30.0, 0.0, 5.0 / 66.0, 0.0, -691.0 / 2730.0, 0.0, 7.0 / 6.0};

double bernoulli_poly(int n, double x) {
  double acc = 0.0;
  double binom = 1.0;
  for (int j = 0; j <= n; ++j) {
    acc += binom * kBernoulli[j] * std::pow(x, n - j);
    binom = binom * (n - j) / (j + 1);
  }
  return acc;
}

struct Tail {
  double value;
  double last_term;
};

// sum_{k>=K} Gamma(k+alpha-1) / (k^alpha k!) from
// Gamma(k+a)/Gamma(k+1) ~ k^(a-1) exp(sum_{n>=2} (-1)^n (B_n(a) - B_n(1)) / (n(n-1)) k^(1-n)),
// a = alpha - 1, expanded as k^-2 sum_j e_j k^-j.
Tail moment_tail(double alpha, double first) {
  constexpr int kOrder = 12;
  std::array<double, kOrder + 1> g{};
  for (int m = 1; m <= kOrder; ++m) {
    const int n = m + 1;
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    g[m] = sign * (bernoulli_poly(n, alpha - 1.0) - bernoulli_poly(n, 1.0)) / (n * (n - 1.0));
  }
  std::array<double, kOrder + 1> e{};
  e[0] = 1.0;
  for (int j = 1; j <= kOrder; ++j) {
    double acc = 0.0;
    for (int m = 1; m <= j; ++m) acc += m * g[m] * e[j - m];
    e[j] = acc / j;
  }
  Tail tail{0.0, 0.0};
  for (int j = 0; j <= kOrder; ++j) {
    const double term = e[j] * hurwitz_zeta(2.0 + j, first);
    tail.value += term;
    tail.last_term = std::fabs(term);
  }
  return tail;
}

}  // namespace

Depth::Depth(std::int64_t n) : n_(n) {
  if (n < 1) throw DomainError("Depth: n must be at least 1");
}

void ShiftedParam::validate() const {
  if (!(lambda > -1.0)) throw DomainError("ShiftedParam: lambda must exceed -1");
}

double cdf_inf(double x) {
  require_number(x, "cdf_inf");
  if (x <= 1.0) return 0.0;
  return 1.0 - conjugate_t(x) / x;
}

SeriesValue survival_series(double x, const SeriesPolicy& policy) {
  policy.validate();
  if (std::isnan(x) || x < 0.0) throw DomainError("survival_series: x must be nonnegative");
  if (x == 0.0) return {1.0, 0.0, 1};
  if (x == std::numeric_limits<double>::infinity()) return {0.0, 0.0, 0};
  if (x != 1.0 && std::fabs(x - 1.0) < kRefusalRadius)
    throw TruncationError("survival_series: tail cannot be certified within 1e-3 of x = 1");
  return detail::sum_tree_series(detail::log_rate(x), 1.0 / x, 1.0, policy,
                                 [](std::int64_t) { return 0.0; });
}

SeriesValue survival_partial_sum(double x, std::int64_t terms) {
  if (std::isnan(x) || x < 0.0) throw DomainError("survival_partial_sum: x must be nonnegative");
  if (terms < 1) throw DomainError("survival_partial_sum: need at least one term");
  if (x == 0.0) return {1.0, 0.0, terms};
  const double log_r = std::fmin(0.0, detail::log_rate(x));
  SeriesValue out;
  out.sum = finite_tree_sum(x, terms, 1.0, [](std::int64_t) { return 0.0; });
  out.tail_bound = detail::stirling_tail_bound(terms, log_r) / x;
  out.terms = terms;
  return out;
}

double cdf_inf_series(double x, const SeriesPolicy& policy) {
  return clamp_probability(1.0 - survival_series(x, policy).sum);
}

DensityValue pdf_inf(double x) {
  require_number(x, "pdf_inf");
  if (x < 1.0) return {0.0, false};
  if (x == 1.0) return {2.0, true};
  if (x == std::numeric_limits<double>::infinity()) return {0.0, false};
  const double t = conjugate_t(x);
  return {t * (x - t) / (x * x * (1.0 - t)), false};
}

double quantile_inf(double u) {
  require_probability(u, "quantile_inf");
  return -std::log1p(-u) / u;
}

double upper_percentage_point(double alpha) {
  require_probability(alpha, "upper_percentage_point");
  return -std::log(alpha) / (1.0 - alpha);
}

double cdf_finite(double x, std::int64_t n) {
  require_number(x, "cdf_finite");
  if (n < 1) throw DomainError("cdf_finite: n must be at least 1");
  if (x <= 0.0) return 0.0;
  if (n == 1) return -std::expm1(-x);
  if (x == std::numeric_limits<double>::infinity()) return 1.0;
  return clamp_probability(1.0 - finite_tree_sum(x, n, 1.0, [](std::int64_t) { return 0.0; }));
}

double cdf(const EvalPoint& point) {
  return point.n.is_infinite() ? cdf_inf(point.x) : cdf_finite(point.x, point.n.value());
}

double cdf_shifted(double x, std::int64_t n, ShiftedParam p) {
  p.validate();
  if (p.lambda == 0.0) return cdf_finite(x, n);
  require_number(x, "cdf_shifted");
  if (n < 1) throw DomainError("cdf_shifted: n must be at least 1");
  if (x <= 0.0) return 0.0;
  const double lambda = p.lambda;
  if (n == 1) return -std::expm1(-(1.0 + lambda) * x);
  if (x == std::numeric_limits<double>::infinity()) return 1.0;
  const double bound_factor = lambda >= 0.0 ? std::exp(lambda) : 1.0 / ((1.0 + lambda) * (1.0 + lambda));
  const double sum = finite_tree_sum(x, n, bound_factor, [lambda](std::int64_t k) {
    return static_cast<double>(k - 2) * std::log1p(lambda / static_cast<double>(k));
  });
  return clamp_probability(-std::expm1(std::log1p(lambda) - lambda * x + std::log(sum)));
}

double cdf_shifted_inf(double x, ShiftedParam p) {
  p.validate();
  if (p.lambda == 0.0) return cdf_inf(x);
  require_number(x, "cdf_shifted_inf");
  if (x <= 1.0) return 0.0;
  if (x == std::numeric_limits<double>::infinity()) return 1.0;
  const double t = conjugate_t(x);
  return clamp_probability(-std::expm1(std::log(t) - std::log(x) + p.lambda * (t - x)));
}

SeriesValue shifted_survival_series(double x, ShiftedParam p, const SeriesPolicy& policy) {
  p.validate();
  if (p.lambda == 0.0) return survival_series(x, policy);
  policy.validate();
  if (std::isnan(x) || x < 0.0) throw DomainError("shifted_survival_series: x must be nonnegative");
  if (x == 0.0) return {1.0, 0.0, 1};
  if (x == std::numeric_limits<double>::infinity()) return {0.0, 0.0, 0};
  if (std::fabs(x - 1.0) < kRefusalRadius)
    throw TruncationError("shifted_survival_series: tail cannot be certified within 1e-3 of x = 1");
  const double lambda = p.lambda;
  const double scale = std::exp(std::log1p(lambda) - lambda * x) / x;
  const double bound_factor = lambda >= 0.0 ? std::exp(lambda) : 1.0 / ((1.0 + lambda) * (1.0 + lambda));
  return detail::sum_tree_series(detail::log_rate(x), scale, bound_factor, policy, [lambda](std::int64_t k) {
    return static_cast<double>(k - 2) * std::log1p(lambda / static_cast<double>(k));
  });
}

double quantile_shifted_inf(double u, ShiftedParam p) {
  p.validate();
  if (p.lambda == 0.0) return quantile_inf(u);
  require_probability(u, "quantile_shifted_inf");
  const double log_survival = std::log1p(-u);
  const double shrink = -std::expm1(log_survival / (1.0 + p.lambda));
  return -log_survival / ((1.0 + p.lambda) * shrink);
}

double cdf_m2(double x) {
  require_number(x, "cdf_m2");
  if (x <= 1.0) return 0.0;
  const double f = cdf_inf(x);
  // e^(-2x) outruns the pole of F / (1 - F).
  if (f > 1.0 - 1e-12) return 1.0;
  return clamp_probability(f + std::exp(-2.0 * x) * f / (1.0 - f));
}

double moment(Depth n, double alpha, const SeriesPolicy& policy) {
  policy.validate();
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("moment: alpha must be positive");
  const double gamma_alpha = gamma_fn(alpha);
  if (!std::isfinite(gamma_alpha)) throw DomainError("moment: Gamma(alpha) overflows");

  const std::int64_t direct =
      n.is_infinite() ? 256 + 16 * static_cast<std::int64_t>(std::ceil(alpha)) : n.value();
  // Gamma(k + alpha - 1) / k!, by products for moderate alpha and in logs beyond.
  const bool use_logs = alpha > 20.0;
  double ratio = gamma_alpha;
  double log_ratio = log_gamma(alpha);
  double sum = 0.0;
  double comp = 0.0;
  for (std::int64_t k = 1; k <= direct; ++k) {
    const auto kd = static_cast<double>(k);
    const double term = use_logs ? std::exp(log_ratio - alpha * std::log(kd)) : ratio / std::pow(kd, alpha);
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (use_logs) {
      log_ratio += std::log((kd + alpha - 1.0) / (kd + 1.0));
    } else {
      ratio *= (kd + alpha - 1.0) / (kd + 1.0);
    }
  }
  if (!n.is_infinite()) return alpha * sum;

  const Tail tail = moment_tail(alpha, static_cast<double>(direct + 1));
  if (alpha * tail.last_term > policy.abs_tol)
    throw TruncationError("moment: asymptotic tail not certified below abs_tol");
  return alpha * (sum + tail.value);
}

}  // namespace maxmean
