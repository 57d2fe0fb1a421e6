#include "maxmean/mc/harness.hpp"

#include <cmath>
#include <string>

#include "kernels.hpp"
#include "maxmean/distribution.hpp"
#include "maxmean/errors.hpp"

namespace maxmean::mc {

namespace {

constexpr double kDepthBias = 1e-4;
constexpr double kCriticalGap = 1e-3;

// Cramer rate of the unit exponential: x - 1 - log x.
double rate(double x) { return x - 1.0 - std::log(x); }

void require_off_critical(std::span<const double> x_grid, const char* what) {
  for (double x : x_grid) {
    if (std::isnan(x) || std::fabs(x - 1.0) < kCriticalGap)
      throw DomainError(std::string(what) + ": grid points must avoid [1 - 1e-3, 1 + 1e-3]");
  }
}

// Smallest N in [lo_start, max_depth] with ok(N), given ok is monotone in N.
template <typename Ok>
std::int64_t smallest_depth(std::int64_t lo_start, std::int64_t max_depth, Ok ok) {
  std::int64_t hi = lo_start;
  while (!ok(hi)) {
    if (hi >= max_depth) throw DepthError("required depth exceeds SimConfig::depth = " + std::to_string(max_depth));
    hi = std::min(max_depth, 2 * hi);
  }
  std::int64_t lo = std::max(lo_start, hi / 2);
  if (ok(lo)) return lo;
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

double inf_truncation_bias(double x, std::int64_t depth) {
  return cdf_finite(x, depth) - cdf_inf(x);
}

}  // namespace

void SimConfig::validate() const {
  if (samples < 1) throw DomainError("SimConfig: samples must be at least 1");
  if (depth < 1) throw DomainError("SimConfig: depth must be at least 1");
  if (workers < 1) throw DomainError("SimConfig: workers must be at least 1");
  if (horizon < 1) throw DomainError("SimConfig: horizon must be at least 1");
  if (trajectory_multiple < 1) throw DomainError("SimConfig: trajectory_multiple must be at least 1");
}

bool EstimateWithCI::covers(double target, double sigmas) const {
  return std::fabs(estimate - target) <= sigmas * std_error + bias_bound;
}

EstimateWithCI frequency_estimate(std::int64_t hits, std::int64_t n, double bias_bound) {
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(n)), n, bias_bound};
}

std::vector<Block> partition(std::int64_t samples, std::int32_t workers) {
  std::vector<Block> blocks;
  blocks.reserve(static_cast<std::size_t>(workers));
  for (std::int32_t b = 0; b < workers; ++b) {
    blocks.push_back({b, samples * b / workers, samples * (b + 1) / workers});
  }
  return blocks;
}

std::vector<double> simulate_running_max(const SimConfig& cfg, std::int64_t n, double lambda) {
  cfg.validate();
  if (n < 1 || n > cfg.depth) throw DomainError("simulate_running_max: need 1 <= n <= depth");
  ShiftedParam{lambda}.validate();
  return kernels::running_max_values(cfg, n, lambda);
}

std::vector<EstimateWithCI> estimate_running_max_cdf(const SimConfig& cfg, std::int64_t n, double lambda,
                                                     std::span<const double> x_grid, std::int64_t first) {
  cfg.validate();
  if (n < 1 || n > cfg.depth) throw DomainError("estimate_running_max_cdf: need 1 <= n <= depth");
  if (first < 1 || first > n) throw DomainError("estimate_running_max_cdf: need 1 <= first <= n");
  ShiftedParam{lambda}.validate();
  const auto counts = kernels::running_max_counts(cfg, n, lambda, x_grid, first);
  std::vector<EstimateWithCI> out;
  for (std::int64_t c : counts) out.push_back(frequency_estimate(c, cfg.samples, 0.0));
  return out;
}

std::int64_t required_depth_inf(std::span<const double> x_grid, double bias_tol, std::int64_t max_depth) {
  require_off_critical(x_grid, "required_depth_inf");
  return smallest_depth(1, max_depth, [&](std::int64_t n) {
    for (double x : x_grid)
      if (inf_truncation_bias(x, n) > bias_tol) return false;
    return true;
  });
}

double m2_truncation_bound(double x, std::int64_t depth) {
  if (std::isnan(x) || std::fabs(x - 1.0) < kCriticalGap)
    throw DomainError("m2_truncation_bound: x must avoid [1 - 1e-3, 1 + 1e-3]");
  if (x <= 0.0) return 0.0;
  const double r = rate(x);
  if (x < 1.0) return std::exp(-static_cast<double>(depth) * r);
  return std::exp(-static_cast<double>(depth + 1) * r) / -std::expm1(-r);
}

std::int64_t required_depth_m2(std::span<const double> x_grid, double bias_tol, std::int64_t max_depth) {
  require_off_critical(x_grid, "required_depth_m2");
  if (max_depth < 2) throw DepthError("required_depth_m2: depth must be at least 2");
  return smallest_depth(2, max_depth, [&](std::int64_t n) {
    for (double x : x_grid)
      if (m2_truncation_bound(x, n) > bias_tol) return false;
    return true;
  });
}

std::vector<EstimateWithCI> estimate_cdf_inf(const SimConfig& cfg, std::span<const double> x_grid) {
  cfg.validate();
  const std::int64_t depth = required_depth_inf(x_grid, kDepthBias, cfg.depth);
  const auto counts = kernels::running_max_counts(cfg, depth, 0.0, x_grid, 1);
  std::vector<EstimateWithCI> out;
  for (std::size_t g = 0; g < x_grid.size(); ++g) {
    // Exact one-sided bias plus rounding slack.
    const double bias = inf_truncation_bias(x_grid[g], depth) + 1e-15;
    out.push_back(frequency_estimate(counts[g], cfg.samples, bias));
  }
  return out;
}

std::vector<EstimateWithCI> estimate_cdf_m2(const SimConfig& cfg, std::span<const double> x_grid) {
  cfg.validate();
  const std::int64_t depth = required_depth_m2(x_grid, kDepthBias, cfg.depth);
  const auto counts = kernels::running_max_counts(cfg, depth, 0.0, x_grid, 2);
  std::vector<EstimateWithCI> out;
  for (std::size_t g = 0; g < x_grid.size(); ++g)
    out.push_back(frequency_estimate(counts[g], cfg.samples, m2_truncation_bound(x_grid[g], depth)));
  return out;
}

double ruin_horizon_bound(const ruin::RiskModel& m, std::int64_t horizon) {
  const double next = static_cast<double>(horizon + 1);
  const double level = m.premium_rate() + std::min(m.capital(), 0.0) / next;
  if (level <= 1.0) return 1.0;
  const double r = rate(level);
  return std::min(1.0, std::exp(-next * r) / -std::expm1(-r));
}

EstimateWithCI estimate_ruin(const SimConfig& cfg, const ruin::RiskModel& m) {
  cfg.validate();
  if (!(m.theta() > 0.0)) throw SolvencyError("estimate_ruin: safety loading must be positive");
  const std::int64_t hits = kernels::ruin_count(cfg, m.premium_rate(), m.capital());
  return frequency_estimate(hits, cfg.samples, ruin_horizon_bound(m, cfg.horizon));
}

double ks_critical_value(std::int64_t m) { return 1.63 / std::sqrt(static_cast<double>(m)); }

double ks_difference_slack(std::int64_t m) { return 0.90 / std::sqrt(static_cast<double>(m)); }

double half_normal_cdf(double x) {
  if (!(x > 0.0)) return 0.0;
  return std::erf(x / std::sqrt(2.0));
}

std::vector<double> simulate_scaled_tail_max(const SimConfig& cfg, std::int64_t n) {
  cfg.validate();
  if (n < 1) throw DomainError("simulate_scaled_tail_max: n must be at least 1");
  return kernels::scaled_tail_max(cfg, n);
}

KsReport weak_convergence_test(const SimConfig& cfg, std::int64_t n) {
  if (n < 1000) throw DomainError("weak_convergence_test: n must be at least 1000");
  auto sample = simulate_scaled_tail_max(cfg, n);
  KsReport report;
  report.samples = cfg.samples;
  report.statistic = ks_statistic(sample, half_normal_cdf);
  report.critical_value = ks_critical_value(cfg.samples);
  report.pass = report.statistic < report.critical_value;
  return report;
}

}  // namespace maxmean::mc
