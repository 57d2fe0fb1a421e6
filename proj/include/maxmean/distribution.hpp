#pragma once

#include <cstdint>

#include "maxmean/series.hpp"

namespace maxmean {

/// Depth of the running maximum: a positive integer n, or the limit n = inf.
class Depth {
 public:
  /// Throws DomainError for n < 1.
  explicit Depth(std::int64_t n);
  static constexpr Depth infinite() { return Depth(); }

  bool is_infinite() const { return n_ == 0; }
  /// Only meaningful when !is_infinite().
  std::int64_t value() const { return n_; }

 private:
  constexpr Depth() = default;
  std::int64_t n_ = 0;
};

/// Shift lambda > -1 of the denominators in Z_{n;lambda} = max_i S_i / (i + lambda).
struct ShiftedParam {
  double lambda = 0.0;

  void validate() const;
};

/// Abscissa and depth at which a distribution function of Z_n is evaluated.
struct EvalPoint {
  double x = 0.0;
  Depth n = Depth::infinite();
};

/// Density value; `right_limit` marks the kink at x = 1, where the right
/// limit is returned.
struct DensityValue {
  double value = 0.0;
  bool right_limit = false;
};

// Z_n = max(X_1, (X_1+X_2)/2, ..., S_n/n) for i.i.d. unit exponentials X_i;
// Z_inf is its almost-sure limit.

/// F_inf(x): zero for x <= 1, 1 - t(x)/x otherwise.
double cdf_inf(double x);

/// sum_{k>=1} k^(k-1)/k! x^(k-1) e^(-kx) = P(Z_inf > x) with a certified tail.
///
/// Equals 1 on [0, 1]. At x == 1 exactly, the k^(-3/2) tail is replaced by
/// an analytic estimate after 2*10^4 terms. Throws TruncationError for
/// 0 < |x - 1| < 1e-3, where the terms decay too slowly to certify.
SeriesValue survival_series(double x, const SeriesPolicy& policy = {});

/// The first `terms` terms of the survival series and a bound on the rest.
/// Never throws for x >= 0; the bound may be large near x = 1.
SeriesValue survival_partial_sum(double x, std::int64_t terms);

/// F_inf via 1 - survival_series.
double cdf_inf_series(double x, const SeriesPolicy& policy = {});

/// f_inf(x) = t (x - t) / (x^2 (1 - t)) on (1, inf), zero below 1.
DensityValue pdf_inf(double x);

/// F_inf^-1(u) = -log(1 - u) / u for u in (0, 1).
double quantile_inf(double u);

/// c_alpha with F_inf(c_alpha) = 1 - alpha: -log(alpha) / (1 - alpha).
double upper_percentage_point(double alpha);

/// F_n(x) = 1 - sum_{k=1..n} k^(k-1)/k! x^(k-1) e^(-kx).
double cdf_finite(double x, std::int64_t n);

/// Dispatches to cdf_finite or cdf_inf.
double cdf(const EvalPoint& point);

/// F_{n;lambda}(x) = 1 - (1+lambda) e^(-lambda x) sum_{k=1..n} k (k+lambda)^(k-2)/k! x^(k-1) e^(-kx).
double cdf_shifted(double x, std::int64_t n, ShiftedParam p);

/// F_{inf;lambda}(x) = 1 - (t/x) e^(lambda (t - x)) for x > 1, zero below.
double cdf_shifted_inf(double x, ShiftedParam p);

/// The series form of 1 - F_{inf;lambda}(x), with certified tail. Throws
/// TruncationError for |x - 1| < 1e-3.
SeriesValue shifted_survival_series(double x, ShiftedParam p, const SeriesPolicy& policy = {});

/// F_{inf;lambda}^-1(u) = -log(1-u) / ((1+lambda)(1 - (1-u)^(1/(1+lambda)))).
double quantile_shifted_inf(double u, ShiftedParam p);

/// Distribution of M_2 = sup_{i>=2} S_i/i: F + e^(-2x) F / (1 - F) with F = F_inf(x).
double cdf_m2(double x);

/// E Z_n^alpha = alpha sum_{k=1..n} Gamma(alpha+k-1) / (k^alpha k!).
///
/// For n = inf the terms decay like k^-2; the sum past k = K is taken from
/// the asymptotic expansion of the terms in powers of 1/k, summed with Hurwitz
/// zeta values. Throws TruncationError if the expansion's last retained term
/// exceeds policy.abs_tol; DomainError for alpha <= 0 or Gamma(alpha) overflow.
double moment(Depth n, double alpha, const SeriesPolicy& policy = {});

}  // namespace maxmean
