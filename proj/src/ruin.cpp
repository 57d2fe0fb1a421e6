#include "maxmean/ruin.hpp"

#include <cmath>

#include "maxmean/errors.hpp"
#include "maxmean/special_fn.hpp"

namespace maxmean::ruin {

namespace {

void require_solvent(double theta) {
  if (std::isnan(theta)) throw DomainError("ruin: theta is NaN");
  if (!(theta > 0.0)) throw SolvencyError("ruin: safety loading must be positive; ruin is certain");
}

void require_level(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("ruin: alpha must lie in (0, 1)");
}

}  // namespace

RiskModel::RiskModel(double theta, double u) : theta_(theta), u_(u) {
  if (std::isnan(theta) || std::isnan(u)) throw DomainError("RiskModel: parameters must be numbers");
}

double ruin_probability(const RiskModel& m) {
  require_solvent(m.theta());
  const double c = m.premium_rate();
  const double u = m.capital();
  if (u <= -c) return 1.0;
  const double ratio = conjugate_t(c) / c;
  return ratio * std::exp(-u * (1.0 - ratio));
}

double min_capital(double alpha, double theta) {
  require_level(alpha);
  require_solvent(theta);
  const double c = 1.0 + theta;
  const double t = conjugate_t(c);
  return c * (std::log(alpha) - std::log(t / c)) / (t - c);
}

double min_capital_root(double alpha, double theta) {
  require_level(alpha);
  require_solvent(theta);
  const double c = 1.0 + theta;
  const double log_alpha = std::log(alpha);
  // Negative near u = -c, tends to -theta log alpha > 0 as u grows.
  const auto g = [&](double u) { return (c + u) * -std::expm1(log_alpha * c / (c + u)) + log_alpha; };

  double lo = -c + 1e-9;
  double hi = 1.0;
  while (g(hi) <= 0.0) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) throw ConvergenceError("min_capital_root: no sign change");
  }
  if (g(lo) > 0.0) throw ConvergenceError("min_capital_root: root lies below the bracket");
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) <= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace maxmean::ruin
