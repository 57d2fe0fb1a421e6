#pragma once

#include "maxmean/series.hpp"

namespace maxmean {

/// Iteration controls for the Lambert W0 and conjugate-point solvers.
///
/// Within `switch_radius` of the square-root branch point (y = -1/e for W0,
/// x = 1 for the conjugate map) the solvers evaluate the branch-point series
/// in p = sqrt(2(1 + e y)) instead of iterating, since the derivative of the
/// defining equation vanishes there.
struct BranchPointPolicy {
  double switch_radius = 0.05;
  double newton_tol = 1e-14;
  int max_iters = 100;

  void validate() const;
};

/// Principal branch W0 of the Lambert W function on [-1/e, inf).
///
/// Arguments up to one ulp below -1/e are clamped to the branch point.
/// Throws DomainError for y < -1/e beyond that, ConvergenceError if Halley's
/// iteration does not reach `newton_tol` (relative residual) in `max_iters`.
double lambert_w0(double y, const BranchPointPolicy& policy = {});

/// The tree function h(y) = sum_{k>=1} k^(k-1)/k! y^k on [0, 1/e].
///
/// Summed term by term with a certified tail bound; h(y) = -W0(-y).
/// Throws DomainError outside [0, 1/e] and TruncationError when the bound
/// cannot be pushed below `policy.abs_tol` within `policy.max_terms`.
SeriesValue tree_fn(double y, const SeriesPolicy& policy = {});

/// The conjugate point t(x): the unique t in (0, 1] with t e^-t = x e^-x.
///
/// Identity on [0, 1]. For x > 1 solves t - log t = x - log x, so it stays
/// finite for any x where x e^-x would underflow.
double conjugate_t(double x, const BranchPointPolicy& policy = {});

/// log Gamma(x) for x > 0 (Lanczos, g = 7, nine coefficients).
double log_gamma(double x);

/// Gamma(x) for x > 0; exact for integer arguments up to 20.
double gamma_fn(double x);

/// Hurwitz zeta sum_{k>=0} (k + a)^-s for s > 1, a > 0, by Euler-Maclaurin.
double hurwitz_zeta(double s, double a);

/// Standard normal distribution function.
double normal_cdf(double x);

}  // namespace maxmean
