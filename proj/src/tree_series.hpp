// Shared machinery for series whose k-th coefficient is k^(k-1)/k! times a
// slowly varying factor. Private to the library.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "maxmean/errors.hpp"
#include "maxmean/series.hpp"
#include "maxmean/special_fn.hpp"

namespace maxmean::detail {

inline constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;
inline constexpr double kInvSqrt2Pi = 0.39894228040143267793994605993438;
inline constexpr double kInvE = 0.36787944117144232159552377016146;

/// Stirling remainder: log k! - [(k + 1/2) log k - k + log sqrt(2 pi)], k >= 10.
inline double stirling_remainder(double k) {
  const double r = 1.0 / k;
  const double r2 = r * r;
  return r * (1.0 / 12.0 - r2 * (1.0 / 360.0 - r2 * (1.0 / 1260.0 - r2 / 1680.0)));
}

/// log(k^(k-1) e^-k / k!). Equals -1.5 log k - log sqrt(2 pi) - remainder for
/// large k, which keeps the log-space terms free of cancellation.
inline double log_scaled_tree_coeff(std::int64_t k) {
  const auto kd = static_cast<double>(k);
  if (k <= 20) {
    double fact = 1.0;
    for (std::int64_t i = 2; i <= k; ++i) fact *= static_cast<double>(i);
    return (kd - 1.0) * std::log(kd) - std::log(fact) - kd;
  }
  return -1.5 * std::log(kd) - kHalfLog2Pi - stirling_remainder(kd);
}

/// log(x e^(1-x)), accurate near x = 1.
inline double log_rate(double x) {
  if (x > 0.5 && x < 2.0) return std::log1p(x - 1.0) - (x - 1.0);
  return std::log(x) + 1.0 - x;
}

/// Upper bound on sum_{k>K} k^(-3/2) r^k / sqrt(2 pi) for 0 <= r <= 1.
inline double stirling_tail_bound(std::int64_t K, double log_r) {
  const double next = static_cast<double>(K + 1);
  const double rk = std::exp(next * log_r);
  double bound = rk * hurwitz_zeta(1.5, next) * kInvSqrt2Pi;
  if (log_r < 0.0) {
    const double geom = std::pow(next, -1.5) * rk / (-std::expm1(log_r)) * kInvSqrt2Pi;
    bound = std::fmin(bound, geom);
  }
  return bound;
}

/// Estimate of sum_{k>K} k^(k-1) e^-k / k! (the r = 1 tail) with its
/// uncertainty, from Robbins' bounds on the Stirling remainder:
/// 1 - 1/(12k) <= e^-delta_k <= 1 - 1/(12k) + 1/(96 k^2).
struct TailEstimate {
  double value;
  double half_width;
};

inline TailEstimate critical_tail(std::int64_t K) {
  const double a = static_cast<double>(K + 1);
  const double lower = hurwitz_zeta(1.5, a) - hurwitz_zeta(2.5, a) / 12.0;
  const double width = hurwitz_zeta(3.5, a) / 96.0;
  return {(lower + 0.5 * width) * kInvSqrt2Pi, 0.5 * width * kInvSqrt2Pi};
}

/// scale * sum_{k>=1} exp(log_scaled_tree_coeff(k) + k log_r + extra(k)),
/// where extra(k) <= log(bound_factor) for all k. Stops once the certified
/// tail falls below policy.abs_tol; at log_r == 0 an analytic tail estimate
/// is added after a fixed number of terms instead.
template <typename Extra>
SeriesValue sum_tree_series(double log_r, double scale, double bound_factor,
                            const SeriesPolicy& policy, Extra extra) {
  policy.validate();
  SeriesValue out;
  if (log_r > 0.0) log_r = 0.0;
  const bool critical = log_r == 0.0;
  // Exact-unity rate: the tail decays like K^(-1/2); use the analytic tail.
  const std::int64_t critical_terms = std::min<std::int64_t>(20000, policy.max_terms);
  double sum = 0.0;
  double comp = 0.0;
  const double tail_scale = scale * bound_factor;
  for (std::int64_t k = 1; k <= policy.max_terms; ++k) {
    const double term = std::exp(log_scaled_tree_coeff(k) + static_cast<double>(k) * log_r + extra(k));
    // Kahan summation.
    const double y = term * scale - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (critical) {
      if (k == critical_terms) {
        // The extra factor is not part of the analytic tail; only used unshifted.
        const TailEstimate tail = critical_tail(k);
        out.sum = sum + scale * tail.value;
        out.tail_bound = scale * tail.half_width;
        out.terms = k;
        return out;
      }
      continue;
    }
    if ((k & 15) == 0 || k < 64) {
      const double bound = tail_scale * stirling_tail_bound(k, log_r);
      if (bound <= policy.abs_tol) {
        out.sum = sum;
        out.tail_bound = bound;
        out.terms = k;
        return out;
      }
    }
  }
  throw TruncationError("series tail bound not reached within " + std::to_string(policy.max_terms) +
                        " terms");
}

}  // namespace maxmean::detail
