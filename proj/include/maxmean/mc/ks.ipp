#pragma once

#include <algorithm>
#include <cmath>

namespace maxmean::mc {

template <typename Cdf>
double ks_statistic(std::vector<double>& sample, Cdf cdf) {
  std::sort(sample.begin(), sample.end());
  const auto m = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max(d, std::max(static_cast<double>(i + 1) / m - f, f - static_cast<double>(i) / m));
  }
  return d;
}

}  // namespace maxmean::mc
