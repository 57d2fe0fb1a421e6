#pragma once

// Serial reference kernels. Straightforward path-at-a-time code that draws
// from the same per-block substreams in the same order as the OpenMP
// kernels, so counts agree bit for bit. Kept for testing and benchmarking.

#include <cstdint>
#include <span>
#include <vector>

#include "maxmean/mc/harness.hpp"

namespace maxmean::mc::reference {

std::vector<double> simulate_running_max(const SimConfig& cfg, std::int64_t n, double lambda);

/// Hit counts of max_{first<=i<=n} S_i/(i + lambda) <= x, per grid point.
std::vector<std::int64_t> running_max_counts(const SimConfig& cfg, std::int64_t n, double lambda,
                                             std::span<const double> x_grid, std::int64_t first);

std::int64_t ruin_count(const SimConfig& cfg, const ruin::RiskModel& m);

/// sqrt(n) M_n from full paths of length n K; no block skipping. Draws a
/// different stream layout than the chunked kernel, so only the law agrees.
std::vector<double> simulate_scaled_tail_max(const SimConfig& cfg, std::int64_t n);

}  // namespace maxmean::mc::reference
