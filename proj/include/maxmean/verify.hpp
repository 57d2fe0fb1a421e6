#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace maxmean::verify {

struct Check {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  double bias_bound = 0.0;
};

struct Report {
  std::string suite;
  std::vector<Check> checks;
  std::uint64_t seed = 0;

  bool pass() const;
  /// {suite, checks: [{name, pass, value, target, tolerance, bias_bound}], seed}
  nlohmann::json to_json() const;
};

struct Options {
  /// series, volume, quantile, ruin, simulation, weak-convergence, genpoisson or all.
  std::string suite = "all";
  std::uint64_t seed = 1;
  int n_max = 12;
  /// Depth n for weak-convergence.
  std::int64_t n = 10'000;
  /// Zero selects each suite's default (10^6 for simulations, 10^4 for the KS test).
  std::int64_t samples = 0;
  std::int32_t workers = 1;
};

const std::vector<std::string>& suite_names();

/// Runs the selected checks. Throws DomainError for an unknown suite.
Report run(const Options& options);

}  // namespace maxmean::verify
