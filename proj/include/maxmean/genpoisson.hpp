#pragma once

#include <cstdint>
#include <vector>

#include "maxmean/series.hpp"

namespace maxmean::genpoisson {

/// p(k; alpha, theta) = theta e^(-alpha(theta+k)) alpha^k (k+theta)^(k-1) / k!
/// on k = 0, 1, 2, ...; alpha in [0, 1], theta > 0. Conventions: alpha^0 = 1
/// even at alpha = 0, and (k+theta)^(k-1) = 1/theta at k = 0.
struct Params {
  double alpha = 0.5;
  double theta = 1.0;

  void validate() const;
};

double pmf(std::int64_t k, const Params& p);

/// P(K <= k).
double cdf(std::int64_t k, const Params& p);

/// Total mass sum_k pmf(k) with a certified tail bound. At alpha = 1 the
/// tail decays like k^(-1/2) and the policy's max_terms is usually exhausted
/// (TruncationError).
SeriesValue total_mass(const Params& p, const SeriesPolicy& policy = {});

/// `count` draws by inversion of the distribution function.
///
/// Deterministic in (p, count, seed). Throws DomainError for alpha > 1 - 1e-6
/// and ConvergenceError if the distribution function does not reach
/// 1 - 1e-12 within 10^6 terms.
std::vector<std::int64_t> sample(const Params& p, std::int64_t count, std::uint64_t seed);

}  // namespace maxmean::genpoisson
