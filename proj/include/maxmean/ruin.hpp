#pragma once

namespace maxmean::ruin {

/// Discrete-time surplus process U_n = u + c n - S_n with unit-exponential
/// claims, premium rate c = 1 + theta and initial capital u (u > -c is allowed).
class RiskModel {
 public:
  RiskModel(double theta, double u);

  double theta() const { return theta_; }
  double premium_rate() const { return 1.0 + theta_; }
  double capital() const { return u_; }

 private:
  double theta_;
  double u_;
};

/// psi(u) = P(U_n < 0 for some n >= 1):
/// (t(c)/c) exp(-u (1 - t(c)/c)) for u > -c, and 1 for u <= -c.
/// Throws SolvencyError when theta <= 0 (ruin is certain).
double ruin_probability(const RiskModel& m);

/// Minimum initial capital u with psi(u) = alpha, from the closed-form
/// inverse u = c (log alpha - log(t/c)) / (t - c), t = t(c).
double min_capital(double alpha, double theta);

/// The same root located by bisection on
/// (1 + theta + u)(1 - alpha^((1+theta)/(1+theta+u))) + log alpha = 0.
/// Independent of the conjugate map; used as a cross-check.
double min_capital_root(double alpha, double theta);

}  // namespace maxmean::ruin
