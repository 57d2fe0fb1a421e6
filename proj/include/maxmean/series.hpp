#pragma once

#include <cstdint>

namespace maxmean {

/// Truncation controls shared by every infinite-series evaluation.
struct SeriesPolicy {
  double abs_tol = 1e-12;
  std::int64_t max_terms = 10'000'000;

  /// Throws DomainError unless abs_tol > 0 and max_terms >= 1.
  void validate() const;
};

/// A truncated series together with an analytic bound on the discarded tail.
struct SeriesValue {
  double sum = 0.0;
  double tail_bound = 0.0;
  std::int64_t terms = 0;
};

}  // namespace maxmean
