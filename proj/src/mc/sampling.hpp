#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "maxmean/rng.hpp"

namespace maxmean::mc::detail {

/// Standard normal, Marsaglia polar method (discards the second variate).
inline double normal(std::mt19937_64& gen) {
  for (;;) {
    const double u = 2.0 * uniform_open0(gen) - 1.0;
    const double v = 2.0 * uniform_open0(gen) - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

/// Sum of `shape` unit exponentials: Gamma(shape, 1). Direct sums for small
/// shapes, Marsaglia-Tsang otherwise.
inline double gamma_sum(std::mt19937_64& gen, std::int64_t shape) {
  if (shape < 4) {
    double s = 0.0;
    for (std::int64_t i = 0; i < shape; ++i) s += exponential(gen);
    return s;
  }
  const double d = static_cast<double>(shape) - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double z = normal(gen);
    double v = 1.0 + c * z;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = uniform_open0(gen);
    if (std::log(u) < 0.5 * z * z + d - d * v + d * std::log(v)) return d * v;
  }
}

}  // namespace maxmean::mc::detail
