#include "kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "maxmean/rng.hpp"
#include "sampling.hpp"

namespace maxmean::mc::kernels {

namespace {

int block_count(const std::vector<Block>& blocks) { return static_cast<int>(blocks.size()); }

double running_max_path(std::mt19937_64& gen, std::int64_t n, double lambda, std::int64_t first) {
  double sum = 0.0;
  double best = -std::numeric_limits<double>::infinity();
  for (std::int64_t i = 1; i <= n; ++i) {
    sum += exponential(gen);
    if (i >= first) best = std::max(best, sum / (static_cast<double>(i) + lambda));
  }
  return best;
}

// Refines a block of `len` steps after index `before` whose increments sum to
// `total`: given the total, the first half sums to total * Beta(h, len - h),
// and the halves are again independent bridges. A half is only opened when
// its crude bound S_end / (first index) can beat `best`.
void refine_block(std::mt19937_64& gen, double sum, std::int64_t before, double total, std::int64_t len,
                  double& best) {
  const double bound = (sum + total) / static_cast<double>(before + 1) - 1.0;
  if (bound <= best) return;
  if (len == 1) {
    best = bound;
    return;
  }
  const std::int64_t h = len / 2;
  const double left = detail::gamma_sum(gen, h);
  const double right = detail::gamma_sum(gen, len - h);
  const double mid = total * (left / (left + right));
  refine_block(gen, sum, before, mid, h, best);
  refine_block(gen, sum + mid, before + h, total - mid, len - h, best);
}

// sqrt(n) sup_{n<=i<=end} (S_i/i - 1), with blocks of ~i / sqrt(n)
// indices drawn as Gamma totals and refined only where they matter.
double scaled_tail_max_path(std::mt19937_64& gen, std::int64_t n, std::int64_t end) {
  double sum = detail::gamma_sum(gen, n);
  std::int64_t index = n;
  double best = sum / static_cast<double>(n) - 1.0;
  const double stride = 1.0 / std::sqrt(static_cast<double>(n));
  while (index < end) {
    const auto len = std::clamp<std::int64_t>(static_cast<std::int64_t>(stride * static_cast<double>(index)), 1,
                                              end - index);
    const double block = detail::gamma_sum(gen, len);
    refine_block(gen, sum, index, block, len, best);
    sum += block;
    index += len;
  }
  return std::sqrt(static_cast<double>(n)) * best;
}

}  // namespace

std::vector<std::int64_t> running_max_counts(const SimConfig& cfg, std::int64_t n, double lambda,
                                             std::span<const double> x_grid, std::int64_t first) {
  const auto blocks = partition(cfg.samples, cfg.workers);
  const std::size_t width = x_grid.size();
  std::vector<std::int64_t> tallies(blocks.size() * width, 0);
#pragma omp parallel for schedule(dynamic, 1)
  for (int b = 0; b < block_count(blocks); ++b) {
    const Block& blk = blocks[static_cast<std::size_t>(b)];
    auto gen = make_stream(cfg.seed, static_cast<std::uint64_t>(blk.index));
    std::int64_t* tally = tallies.data() + static_cast<std::size_t>(b) * width;
    for (std::int64_t s = blk.begin; s < blk.end; ++s) {
      const double m = running_max_path(gen, n, lambda, first);
      for (std::size_t g = 0; g < width; ++g) tally[g] += m <= x_grid[g] ? 1 : 0;
    }
  }
  std::vector<std::int64_t> counts(width, 0);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (std::size_t g = 0; g < width; ++g) counts[g] += tallies[b * width + g];
  return counts;
}

std::vector<double> running_max_values(const SimConfig& cfg, std::int64_t n, double lambda) {
  const auto blocks = partition(cfg.samples, cfg.workers);
  std::vector<double> out(static_cast<std::size_t>(cfg.samples));
#pragma omp parallel for schedule(dynamic, 1)
  for (int b = 0; b < block_count(blocks); ++b) {
    const Block& blk = blocks[static_cast<std::size_t>(b)];
    auto gen = make_stream(cfg.seed, static_cast<std::uint64_t>(blk.index));
    for (std::int64_t s = blk.begin; s < blk.end; ++s)
      out[static_cast<std::size_t>(s)] = running_max_path(gen, n, lambda, 1);
  }
  return out;
}

std::int64_t ruin_count(const SimConfig& cfg, double c, double u) {
  const auto blocks = partition(cfg.samples, cfg.workers);
  std::int64_t total = 0;
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : total)
  for (int b = 0; b < block_count(blocks); ++b) {
    const Block& blk = blocks[static_cast<std::size_t>(b)];
    auto gen = make_stream(cfg.seed, static_cast<std::uint64_t>(blk.index));
    std::int64_t hits = 0;
    for (std::int64_t s = blk.begin; s < blk.end; ++s) {
      double claims = 0.0;
      for (std::int64_t t = 1; t <= cfg.horizon; ++t) {
        claims += exponential(gen);
        if (u + c * static_cast<double>(t) - claims < 0.0) {
          ++hits;
          break;
        }
      }
    }
    total += hits;
  }
  return total;
}

std::vector<double> scaled_tail_max(const SimConfig& cfg, std::int64_t n) {
  const auto blocks = partition(cfg.samples, cfg.workers);
  std::vector<double> out(static_cast<std::size_t>(cfg.samples));
  const std::int64_t end = n * cfg.trajectory_multiple;
#pragma omp parallel for schedule(dynamic, 1)
  for (int b = 0; b < block_count(blocks); ++b) {
    const Block& blk = blocks[static_cast<std::size_t>(b)];
    auto gen = make_stream(cfg.seed, static_cast<std::uint64_t>(blk.index));
    for (std::int64_t s = blk.begin; s < blk.end; ++s)
      out[static_cast<std::size_t>(s)] = scaled_tail_max_path(gen, n, end);
  }
  return out;
}

}  // namespace maxmean::mc::kernels
