#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "maxmean/ruin.hpp"

namespace maxmean::mc {

/// Monte Carlo controls.
///
/// The sample space is cut into `workers` contiguous blocks; block b draws
/// from substream b of `seed`. Results are a function of (seed, workers) only,
/// whatever the number of OpenMP threads.
struct SimConfig {
  std::uint64_t seed = 1;
  std::int64_t samples = 1'000'000;
  /// Largest sequence index simulated when truncating a supremum.
  std::int64_t depth = 100'000;
  std::int32_t workers = 1;
  /// Time cap for ruin paths.
  std::int64_t horizon = 2'000;
  /// Weak-convergence trajectories run to index n * trajectory_multiple.
  std::int64_t trajectory_multiple = 10'000;

  void validate() const;
};

/// Frequency estimate with std_error = sqrt(p (1 - p) / n) and a bound on the
/// bias introduced by truncating an infinite supremum.
struct EstimateWithCI {
  double estimate = 0.0;
  double std_error = 0.0;
  std::int64_t n = 0;
  double bias_bound = 0.0;

  /// |estimate - target| <= sigmas * std_error + bias_bound.
  bool covers(double target, double sigmas) const;
};

EstimateWithCI frequency_estimate(std::int64_t hits, std::int64_t n, double bias_bound);

/// Blocks [begin, end) of the sample index range, one per worker.
struct Block {
  std::int64_t index;
  std::int64_t begin;
  std::int64_t end;
};
std::vector<Block> partition(std::int64_t samples, std::int32_t workers);

/// Samples of Z_{n;lambda} = max_{i<=n} S_i / (i + lambda).
std::vector<double> simulate_running_max(const SimConfig& cfg, std::int64_t n, double lambda);

/// P(max_{first<=i<=n} S_i/(i + lambda) <= x) at every x of the grid, without
/// storing samples. bias_bound is left at zero.
std::vector<EstimateWithCI> estimate_running_max_cdf(const SimConfig& cfg, std::int64_t n, double lambda,
                                                     std::span<const double> x_grid, std::int64_t first = 1);

/// Smallest depth N whose exact truncation bias F_N(x) - F_inf(x) is below
/// `bias_tol` at every grid point. Throws DepthError beyond `max_depth`.
std::int64_t required_depth_inf(std::span<const double> x_grid, double bias_tol, std::int64_t max_depth);

/// Smallest N whose Chernoff bound on P(sup_{i>N} S_i/i > x) (x > 1), or on
/// P(S_N/N <= x) (x < 1), is below `bias_tol` at every grid point.
std::int64_t required_depth_m2(std::span<const double> x_grid, double bias_tol, std::int64_t max_depth);

/// Chernoff bound used by required_depth_m2 at a single point and depth.
double m2_truncation_bound(double x, std::int64_t depth);

/// F_inf through Z_N with certified truncation (bias below 1e-4).
/// Grid points must avoid [1 - 1e-3, 1 + 1e-3].
std::vector<EstimateWithCI> estimate_cdf_inf(const SimConfig& cfg, std::span<const double> x_grid);

/// F_{M_2} through sup_{2<=i<=N} S_i/i with the Chernoff truncation bound.
std::vector<EstimateWithCI> estimate_cdf_m2(const SimConfig& cfg, std::span<const double> x_grid);

/// Bound on P(ruin after the horizon) from P(S_n >= n y) <= e^(-n (y - 1 - log y)).
/// Returns 1 when the Chernoff rate is not available.
double ruin_horizon_bound(const ruin::RiskModel& m, std::int64_t horizon);

/// Frequency of min_{n<=horizon} U_n < 0.
EstimateWithCI estimate_ruin(const SimConfig& cfg, const ruin::RiskModel& m);

struct KsReport {
  double statistic = 0.0;
  double critical_value = 0.0;
  bool pass = false;
  std::int64_t samples = 0;
};

/// Two-sided Kolmogorov-Smirnov statistic of `sample` against `cdf`; the
/// sample is sorted in place.
template <typename Cdf>
double ks_statistic(std::vector<double>& sample, Cdf cdf);

/// 1% critical value 1.63 / sqrt(m).
double ks_critical_value(std::int64_t m);

/// Allowance 0.90 / sqrt(m) when comparing two independent KS statistics of
/// m samples each: the 99% quantile of D_1 - D_2 under the null.
double ks_difference_slack(std::int64_t m);

/// 2 Phi(x) - 1 on x >= 0, zero below.
double half_normal_cdf(double x);

/// Samples of sqrt(n) M_n for centred unit-exponential steps X_i - 1, with
/// M_n = sup_{n<=i<=n K} (S_i - i)/i and K = cfg.trajectory_multiple.
std::vector<double> simulate_scaled_tail_max(const SimConfig& cfg, std::int64_t n);

/// KS test of sqrt(n) M_n against the half-normal law at the 1% level.
KsReport weak_convergence_test(const SimConfig& cfg, std::int64_t n);

}  // namespace maxmean::mc

#include "maxmean/mc/ks.ipp"
