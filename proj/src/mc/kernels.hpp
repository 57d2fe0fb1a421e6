#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "maxmean/mc/harness.hpp"

namespace maxmean::mc::kernels {

// OpenMP-parallel kernels; one task per block.

std::vector<std::int64_t> running_max_counts(const SimConfig& cfg, std::int64_t n, double lambda,
                                             std::span<const double> x_grid, std::int64_t first);

std::vector<double> running_max_values(const SimConfig& cfg, std::int64_t n, double lambda);

std::int64_t ruin_count(const SimConfig& cfg, double c, double u);

std::vector<double> scaled_tail_max(const SimConfig& cfg, std::int64_t n);

}  // namespace maxmean::mc::kernels
