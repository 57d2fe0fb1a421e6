#include "maxmean/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "maxmean/distribution.hpp"
#include "maxmean/errors.hpp"
#include "maxmean/genpoisson.hpp"
#include "maxmean/mc/harness.hpp"
#include "maxmean/ruin.hpp"
#include "maxmean/special_fn.hpp"
#include "maxmean/volume.hpp"

namespace maxmean::verify {

namespace {

constexpr double kPi2Over6 = std::numbers::pi * std::numbers::pi / 6.0;

Check within(std::string name, double value, double target, double tolerance, double bias = 0.0) {
  const bool ok = std::isfinite(value) && std::fabs(value - target) <= tolerance + bias;
  return {std::move(name), ok, value, target, tolerance, bias};
}

// |max error| of a grid check, reported against target 0.
Check max_error(std::string name, double worst, double tolerance) {
  return within(std::move(name), worst, 0.0, tolerance);
}

std::int64_t samples_or(const Options& o, std::int64_t fallback) { return o.samples > 0 ? o.samples : fallback; }

mc::SimConfig sim_config(const Options& o, std::int64_t samples) {
  mc::SimConfig cfg;
  cfg.seed = o.seed;
  cfg.samples = samples;
  cfg.workers = o.workers;
  return cfg;
}

void series_suite(const Options&, std::vector<Check>& out) {
  SeriesPolicy tight{1e-10, 10'000'000};
  double worst = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double x = i / 100.0;
    const SeriesValue s = survival_series(x, tight);
    worst = std::max(worst, std::fabs(s.sum - 1.0) + s.tail_bound);
  }
  out.push_back(max_error("identity_on_unit_interval", worst, 1e-8));

  worst = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double x = 10.0 * i / 400.0;
    if (std::fabs(x - 1.0) < 1e-3) continue;
    worst = std::max(worst, std::fabs(cdf_inf_series(x) - cdf_inf(x)));
  }
  // Both sides are accurate to 1e-12.
  out.push_back(max_error("series_matches_closed_form", worst, 2e-12));

  worst = 0.0;
  for (int i = 1; i <= 200; ++i) {
    const double x = 1.0 + 19.0 * i / 200.0;
    worst = std::max(worst, std::fabs(cdf_inf(x) - (1.0 + lambert_w0(-x * std::exp(-x)) / x)));
  }
  out.push_back(max_error("lambert_w_representation", worst, 1e-10));

  worst = 0.0;
  bool positive = true;
  for (int i = 1; i <= 100; ++i) {
    const double x = 1.01 + (10.0 - 1.01) * i / 100.0;
    const double h = 1e-5;
    const double fd = (cdf_inf(x + h) - cdf_inf(x - h)) / (2.0 * h);
    const double f = pdf_inf(x).value;
    positive = positive && f > 0.0;
    worst = std::max(worst, std::fabs(f - fd));
  }
  out.push_back(max_error("density_matches_differences", worst, 1e-7));
  out.push_back({"density_positive_above_one", positive, positive ? 1.0 : 0.0, 1.0, 0.0, 0.0});
}

void volume_suite(const Options& o, std::vector<Check>& out) {
  int mismatches = 0;
  for (int n = 0; n <= o.n_max; ++n)
    if (!(volume::by_recursion(n) == volume::closed_form(n))) ++mismatches;
  out.push_back(within("recursion_equals_closed_form", mismatches, 0.0, 0.0));

  // t = 0 coefficient of V_{k-1} is k^(k-2)/(k-1)! = k^(k-1)/k!.
  int bad = 0;
  for (int n = 0; n <= o.n_max; ++n) {
    const auto restricted = volume::closed_form(n).at_t_zero();
    volume::Rational expected = 1;
    for (int i = 0; i < n - 1; ++i) expected *= (n + 1);
    for (int i = 2; i <= n; ++i) expected /= i;
    if (restricted.size() != 1 || restricted.begin()->first != n || restricted.begin()->second != expected) ++bad;
  }
  out.push_back(within("t_zero_specialisation", bad, 0.0, 0.0));
}

void quantile_suite(const Options&, std::vector<Check>& out) {
  double worst = 0.0;
  for (int i = 1; i <= 999; ++i) {
    const double u = 0.001 + 0.998 * i / 1000.0;
    worst = std::max(worst, std::fabs(cdf_inf(quantile_inf(u)) - u));
  }
  out.push_back(max_error("quantile_round_trip", worst, 1e-10));

  worst = 0.0;
  for (double lambda : {-0.5, 0.0, 0.5, 1.0, 3.0}) {
    for (int i = 1; i <= 99; ++i) {
      const double u = i / 100.0;
      const ShiftedParam p{lambda};
      worst = std::max(worst, std::fabs(cdf_shifted_inf(quantile_shifted_inf(u, p), p) - u));
    }
  }
  out.push_back(max_error("shifted_quantile_round_trip", worst, 1e-10));
  out.push_back(within("upper_percentage_point_0.05", cdf_inf(upper_percentage_point(0.05)), 0.95, 1e-10));

  const double mean = moment(Depth::infinite(), 1.0);
  const double second = moment(Depth::infinite(), 2.0);
  out.push_back(within("mean", mean, kPi2Over6, 1e-10));
  out.push_back(within("variance", second - mean * mean, kPi2Over6 * (2.0 - kPi2Over6), 1e-10));
  out.push_back(within("mean_n3", moment(Depth(3), 1.0), 49.0 / 36.0, 4e-16));
}

void ruin_suite(const Options&, std::vector<Check>& out) {
  out.push_back(within("min_capital_0.5_0.5", ruin::min_capital(0.5, 0.5), -0.3107, 5e-4));
  double round_trip = 0.0;
  double two_path = 0.0;
  for (double alpha : {0.01, 0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 0.8, 0.9}) {
    for (double theta : {0.1, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0}) {
      const double u = ruin::min_capital(alpha, theta);
      round_trip = std::max(round_trip, std::fabs(ruin::ruin_probability({theta, u}) - alpha));
      two_path = std::max(two_path, std::fabs(ruin::min_capital_root(alpha, theta) - u));
    }
  }
  out.push_back(max_error("min_capital_round_trip", round_trip, 1e-10));
  out.push_back(max_error("min_capital_two_paths", two_path, 1e-10));

  double shifted = 0.0;
  for (double theta : {0.2, 1.0, 2.5})
    for (double u : {-0.5, 0.0, 0.7, 3.0}) {
      const double c = 1.0 + theta;
      shifted = std::max(shifted, std::fabs(ruin::ruin_probability({theta, u}) -
                                             (1.0 - cdf_shifted_inf(c, ShiftedParam{u / c}))));
    }
  out.push_back(max_error("ruin_matches_shifted_family", shifted, 1e-12));
}

void simulation_suite(const Options& o, std::vector<Check>& out) {
  auto cfg = sim_config(o, samples_or(o, 1'000'000));
  // Ruin paths mostly survive; past 200 steps the horizon bias is below 1e-26.
  cfg.horizon = 200;
  const double sigmas = 4.0;
  auto push = [&](std::string name, const mc::EstimateWithCI& e, double target) {
    out.push_back(within(std::move(name), e.estimate, target, sigmas * e.std_error, e.bias_bound));
  };

  const double x5[] = {1.0};
  push("running_max_n5_x1", mc::estimate_running_max_cdf(cfg, 5, 0.0, x5)[0], cdf_finite(1.0, 5));
  const double x3[] = {1.5};
  push("shifted_n3_x1.5", mc::estimate_running_max_cdf(cfg, 3, 0.5, x3)[0], cdf_shifted(1.5, 3, {0.5}));

  const double inf_grid[] = {1.2, 2.0, 4.0};
  const auto inf = mc::estimate_cdf_inf(cfg, inf_grid);
  for (std::size_t i = 0; i < inf.size(); ++i)
    push("cdf_inf_x" + std::to_string(inf_grid[i]).substr(0, 3), inf[i], cdf_inf(inf_grid[i]));

  const double m2_grid[] = {1.5, 3.0};
  const auto m2 = mc::estimate_cdf_m2(cfg, m2_grid);
  for (std::size_t i = 0; i < m2.size(); ++i)
    push("cdf_m2_x" + std::to_string(m2_grid[i]).substr(0, 3), m2[i], cdf_m2(m2_grid[i]));

  const ruin::RiskModel model{1.0, 0.0};
  push("ruin_theta1_u0", mc::estimate_ruin(cfg, model), ruin::ruin_probability(model));
}

void weak_convergence_suite(const Options& o, std::vector<Check>& out) {
  const auto cfg = sim_config(o, samples_or(o, 10'000));
  const auto at_n = mc::weak_convergence_test(cfg, o.n);
  const auto at_10n = mc::weak_convergence_test(cfg, 10 * o.n);
  out.push_back({"ks_half_normal_n" + std::to_string(o.n), at_n.pass, at_n.statistic, 0.0, at_n.critical_value, 0.0});
  out.push_back({"ks_half_normal_n" + std::to_string(10 * o.n), at_10n.pass, at_10n.statistic, 0.0,
                 at_10n.critical_value, 0.0});
  // The statistic should not grow with n, up to sampling noise.
  const double slack = mc::ks_difference_slack(cfg.samples);
  const double growth = at_10n.statistic - at_n.statistic;
  out.push_back({"ks_not_increasing", growth <= slack, growth, 0.0, slack, 0.0});
}

void genpoisson_suite(const Options& o, std::vector<Check>& out) {
  double worst = 0.0;
  for (int a = 1; a <= 9; ++a)
    for (double theta : {0.5, 1.0, 2.0, 5.0}) {
      const SeriesValue mass = genpoisson::total_mass({a / 10.0, theta}, {1e-13, 10'000'000});
      worst = std::max(worst, std::fabs(mass.sum - 1.0) + mass.tail_bound);
    }
  out.push_back(max_error("pmf_normalisation", worst, 1e-10));

  // Chi-square goodness of fit; bins with expected count >= 5, tail lumped.
  const genpoisson::Params p{0.5, 1.0};
  const std::int64_t draws = samples_or(o, 1'000'000);
  const auto sample = genpoisson::sample(p, draws, o.seed);
  std::map<std::int64_t, std::int64_t> observed;
  for (auto k : sample) ++observed[k];
  const auto n = static_cast<double>(draws);
  double chi2 = 0.0;
  double cum = 0.0;
  int bins = 0;
  std::int64_t k = 0;
  std::int64_t seen = 0;
  for (;; ++k) {
    const double prob = genpoisson::pmf(k, p);
    if (prob * n < 5.0 || (1.0 - cum - prob) * n < 5.0) break;
    const double obs = static_cast<double>(observed[k]);
    chi2 += (obs - n * prob) * (obs - n * prob) / (n * prob);
    cum += prob;
    seen += observed[k];
    ++bins;
  }
  const double tail_expected = n * (1.0 - cum);
  const double tail_observed = static_cast<double>(draws - seen);
  chi2 += (tail_observed - tail_expected) * (tail_observed - tail_expected) / tail_expected;
  ++bins;
  const double p_value = boost::math::gamma_q(0.5 * (bins - 1), 0.5 * chi2);
  out.push_back({"sampler_chi_square_p_value", p_value >= 1e-3, p_value, 1.0, 1.0 - 1e-3, 0.0});
}

using Suite = std::function<void(const Options&, std::vector<Check>&)>;

const std::map<std::string, Suite>& suites() {
  static const std::map<std::string, Suite> table = {
      {"series", series_suite},         {"volume", volume_suite},
      {"quantile", quantile_suite},     {"ruin", ruin_suite},
      {"simulation", simulation_suite}, {"weak-convergence", weak_convergence_suite},
      {"genpoisson", genpoisson_suite},
  };
  return table;
}

}  // namespace

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

nlohmann::json Report::to_json() const {
  nlohmann::json checks_json = nlohmann::json::array();
  for (const auto& c : checks) {
    checks_json.push_back({{"name", c.name},
                           {"pass", c.pass},
                           {"value", c.value},
                           {"target", c.target},
                           {"tolerance", c.tolerance},
                           {"bias_bound", c.bias_bound}});
  }
  return {{"suite", suite}, {"checks", checks_json}, {"seed", seed}};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"series",           "volume",     "quantile", "ruin",
                                                 "simulation",       "weak-convergence",
                                                 "genpoisson",       "all"};
  return names;
}

Report run(const Options& options) {
  Report report;
  report.suite = options.suite;
  report.seed = options.seed;
  if (options.suite == "all") {
    for (const auto& name : suite_names()) {
      if (name == "all") continue;
      suites().at(name)(options, report.checks);
    }
    return report;
  }
  const auto it = suites().find(options.suite);
  if (it == suites().end()) throw DomainError("verify: unknown suite '" + options.suite + "'");
  it->second(options, report.checks);
  return report;
}

}  // namespace maxmean::verify
