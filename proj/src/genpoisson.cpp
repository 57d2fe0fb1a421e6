#include "maxmean/genpoisson.hpp"

#include <algorithm>
#include <cmath>

#include "maxmean/errors.hpp"
#include "maxmean/rng.hpp"
#include "tree_series.hpp"

namespace maxmean::genpoisson {

namespace {

constexpr std::int64_t kMaxTableTerms = 1'000'000;

// theta e^(theta (1 - alpha)): the constant in
// pmf(k) <= bound_factor * k^(-3/2) r^k / sqrt(2 pi), r = alpha e^(1 - alpha).
double bound_factor(const Params& p) { return p.theta * std::exp(p.theta * (1.0 - p.alpha)); }

}  // namespace

void Params::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("genpoisson: alpha must lie in [0, 1]");
  if (!(theta > 0.0) || !std::isfinite(theta)) throw DomainError("genpoisson: theta must be positive");
}

double pmf(std::int64_t k, const Params& p) {
  p.validate();
  if (k < 0) return 0.0;
  if (k == 0) return std::exp(-p.alpha * p.theta);
  if (p.alpha == 0.0) return 0.0;
  // log theta - alpha theta + log(k^(k-1) e^-k / k!) + k log(alpha e^(1-alpha))
  //   + (k-1) log(1 + theta/k)
  const auto kd = static_cast<double>(k);
  const double log_p = std::log(p.theta) - p.alpha * p.theta + detail::log_scaled_tree_coeff(k) +
                       kd * detail::log_rate(p.alpha) + (kd - 1.0) * std::log1p(p.theta / kd);
  return std::exp(log_p);
}

double cdf(std::int64_t k, const Params& p) {
  p.validate();
  if (k < 0) return 0.0;
  double sum = 0.0;
  double comp = 0.0;
  for (std::int64_t j = 0; j <= k; ++j) {
    const double y = pmf(j, p) - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (j > 64 && sum >= 1.0) break;
  }
  return std::min(sum, 1.0);
}

SeriesValue total_mass(const Params& p, const SeriesPolicy& policy) {
  p.validate();
  policy.validate();
  if (p.alpha == 0.0) return {1.0, 0.0, 1};
  const double log_r = std::fmin(0.0, detail::log_rate(p.alpha));
  const double factor = bound_factor(p);
  double sum = 0.0;
  double comp = 0.0;
  for (std::int64_t k = 0; k < policy.max_terms; ++k) {
    const double y = pmf(k, p) - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (k >= 1 && log_r < 0.0) {
      const double bound = factor * detail::stirling_tail_bound(k, log_r);
      if (bound <= policy.abs_tol) return {sum, bound, k + 1};
    }
  }
  throw TruncationError("genpoisson::total_mass: tail bound not reached within max_terms");
}

std::vector<std::int64_t> sample(const Params& p, std::int64_t count, std::uint64_t seed) {
  p.validate();
  if (count < 1) throw DomainError("genpoisson::sample: count must be at least 1");
  if (p.alpha > 1.0 - 1e-6) throw DomainError("genpoisson::sample: alpha too close to 1 to certify the tail");
  if (p.alpha == 0.0) return std::vector<std::int64_t>(static_cast<std::size_t>(count), 0);

  // Distribution function table, extended until the certified tail is negligible.
  const double log_r = detail::log_rate(p.alpha);
  const double factor = bound_factor(p);
  std::vector<double> table;
  double sum = 0.0;
  for (std::int64_t k = 0;; ++k) {
    sum += pmf(k, p);
    table.push_back(sum);
    if (k >= 1 && factor * detail::stirling_tail_bound(k, log_r) <= 1e-16) break;
    if (k + 1 >= kMaxTableTerms) {
      if (sum < 1.0 - 1e-12)
        throw ConvergenceError("genpoisson::sample: distribution function did not reach 1 - 1e-12");
      break;
    }
  }

  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(count));
  auto gen = make_stream(seed, 0);
  for (std::int64_t i = 0; i < count; ++i) {
    const double u = uniform_open0(gen);
    const auto it = std::lower_bound(table.begin(), table.end(), u);
    if (it != table.end()) {
      out.push_back(static_cast<std::int64_t>(it - table.begin()));
      continue;
    }
    // Sequential search past the table; only reachable through rounding.
    std::int64_t k = static_cast<std::int64_t>(table.size());
    double cum = table.back();
    for (; k < 2 * kMaxTableTerms; ++k) {
      cum += pmf(k, p);
      if (cum >= u) break;
    }
    out.push_back(k);
  }
  return out;
}

}  // namespace maxmean::genpoisson
