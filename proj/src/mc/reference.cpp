#include "maxmean/mc/reference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "maxmean/rng.hpp"
#include "sampling.hpp"

namespace maxmean::mc::reference {

namespace {

// Whole path of sample means S_i/(i + lambda), i = 1..n.
std::vector<double> mean_path(std::mt19937_64& gen, std::int64_t n, double lambda) {
  std::vector<double> steps(static_cast<std::size_t>(n));
  for (auto& x : steps) x = exponential(gen);
  std::vector<double> sums(steps.size());
  std::partial_sum(steps.begin(), steps.end(), sums.begin());
  std::vector<double> means(sums.size());
  for (std::size_t i = 0; i < sums.size(); ++i) means[i] = sums[i] / (static_cast<double>(i + 1) + lambda);
  return means;
}

}  // namespace

std::vector<double> simulate_running_max(const SimConfig& cfg, std::int64_t n, double lambda) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(cfg.samples));
  for (const Block& blk : partition(cfg.samples, cfg.workers)) {
    auto gen = make_stream(cfg.seed, static_cast<std::uint64_t>(blk.index));
    for (std::int64_t s = blk.begin; s < blk.end; ++s) {
      const auto means = mean_path(gen, n, lambda);
      out.push_back(*std::max_element(means.begin(), means.end()));
    }
  }
  return out;
}

std::vector<std::int64_t> running_max_counts(const SimConfig& cfg, std::int64_t n, double lambda,
                                             std::span<const double> x_grid, std::int64_t first) {
  std::vector<std::int64_t> counts(x_grid.size(), 0);
  for (const Block& blk : partition(cfg.samples, cfg.workers)) {
    auto gen = make_stream(cfg.seed, static_cast<std::uint64_t>(blk.index));
    for (std::int64_t s = blk.begin; s < blk.end; ++s) {
      const auto means = mean_path(gen, n, lambda);
      const double m = *std::max_element(means.begin() + (first - 1), means.end());
      for (std::size_t g = 0; g < x_grid.size(); ++g)
        if (m <= x_grid[g]) ++counts[g];
    }
  }
  return counts;
}

std::int64_t ruin_count(const SimConfig& cfg, const ruin::RiskModel& m) {
  const double c = m.premium_rate();
  std::int64_t hits = 0;
  for (const Block& blk : partition(cfg.samples, cfg.workers)) {
    auto gen = make_stream(cfg.seed, static_cast<std::uint64_t>(blk.index));
    for (std::int64_t s = blk.begin; s < blk.end; ++s) {
      // Surplus path up to ruin or the horizon.
      std::vector<double> surplus;
      double claims = 0.0;
      for (std::int64_t t = 1; t <= cfg.horizon; ++t) {
        claims += exponential(gen);
        surplus.push_back(m.capital() + c * static_cast<double>(t) - claims);
        if (surplus.back() < 0.0) break;
      }
      if (!surplus.empty() && *std::min_element(surplus.begin(), surplus.end()) < 0.0) ++hits;
    }
  }
  return hits;
}

std::vector<double> simulate_scaled_tail_max(const SimConfig& cfg, std::int64_t n) {
  const std::int64_t end = n * cfg.trajectory_multiple;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(cfg.samples));
  for (const Block& blk : partition(cfg.samples, cfg.workers)) {
    auto gen = make_stream(cfg.seed, static_cast<std::uint64_t>(blk.index));
    for (std::int64_t s = blk.begin; s < blk.end; ++s) {
      double sum = 0.0;
      double best = -INFINITY;
      for (std::int64_t i = 1; i <= end; ++i) {
        sum += exponential(gen);
        if (i >= n) best = std::max(best, sum / static_cast<double>(i) - 1.0);
      }
      out.push_back(std::sqrt(static_cast<double>(n)) * best);
    }
  }
  return out;
}

}  // namespace maxmean::mc::reference
