#include "maxmean/volume.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "maxmean/errors.hpp"

namespace maxmean::volume {

namespace {

// binomial(n, 0..n)
std::vector<Rational> binomial_row(int n) {
  std::vector<Rational> row(static_cast<std::size_t>(n) + 1);
  row[0] = 1;
  for (int j = 1; j <= n; ++j) row[j] = row[j - 1] * (n - j + 1) / j;
  return row;
}

}  // namespace

BivariatePoly BivariatePoly::constant(const Rational& c) {
  BivariatePoly p;
  p.add(0, 0, c);
  return p;
}

void BivariatePoly::add(int deg_x, int deg_t, const Rational& c) {
  if (deg_x < 0 || deg_t < 0) throw DomainError("BivariatePoly: negative degree");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace({deg_x, deg_t}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational BivariatePoly::coefficient(int deg_x, int deg_t) const {
  const auto it = terms_.find({deg_x, deg_t});
  return it == terms_.end() ? Rational(0) : it->second;
}

int BivariatePoly::total_degree() const {
  int d = -1;
  for (const auto& [mono, c] : terms_) d = std::max(d, mono.first + mono.second);
  return d;
}

std::map<int, Rational> BivariatePoly::at_t_zero() const {
  std::map<int, Rational> out;
  for (const auto& [mono, c] : terms_)
    if (mono.second == 0) out.emplace(mono.first, c);
  return out;
}

double BivariatePoly::evaluate(double x, double t) const {
  double acc = 0.0;
  for (const auto& [mono, c] : terms_)
    acc += static_cast<double>(c) * std::pow(x, mono.first) * std::pow(t, mono.second);
  return acc;
}

std::string BivariatePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [mono, c] = *it;
    if (!first) os << " + ";
    first = false;
    os << "(" << c << ")";
    if (mono.first > 0) os << " x^" << mono.first;
    if (mono.second > 0) os << " t^" << mono.second;
  }
  return os.str();
}

BivariatePoly BivariatePoly::operator*(const BivariatePoly& other) const {
  BivariatePoly out;
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : other.terms_) out.add(a.first + b.first, a.second + b.second, ca * cb);
  return out;
}

BivariatePoly& BivariatePoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [mono, coef] : terms_) coef *= c;
  return *this;
}

BivariatePoly recursion_step(const BivariatePoly& v) {
  // c x^i s^j  ->  c x^i (x+t)^(j+1) / (j+1)
  //            =   c/(j+1) sum_m binom(j+1, m) x^(i+j+1-m) t^m
  BivariatePoly out;
  for (const auto& [mono, c] : v.terms()) {
    const auto [i, j] = mono;
    const auto row = binomial_row(j + 1);
    const Rational scaled = c / (j + 1);
    for (int m = 0; m <= j + 1; ++m) out.add(i + j + 1 - m, m, scaled * row[m]);
  }
  return out;
}

BivariatePoly closed_form(int n) {
  if (n < 0) throw DomainError("volume::closed_form: n must be nonnegative");
  if (n == 0) return BivariatePoly::constant(1);
  BivariatePoly x_plus_t;
  x_plus_t.add(1, 0, 1);
  x_plus_t.add(0, 1, 1);
  // ((n+1) x + t)^(n-1) by the binomial theorem.
  BivariatePoly power;
  const auto row = binomial_row(n - 1);
  Rational lead = 1;  // (n+1)^(n-1-m), built from m = n-1 down
  for (int m = n - 1; m >= 0; --m) {
    power.add(n - 1 - m, m, row[m] * lead);
    lead *= (n + 1);
  }
  BivariatePoly out = x_plus_t * power;
  Rational fact = 1;
  for (int k = 2; k <= n; ++k) fact *= k;
  out *= Rational(1) / fact;
  return out;
}

BivariatePoly by_recursion(int n) {
  if (n < 0) throw DomainError("volume::by_recursion: n must be nonnegative");
  BivariatePoly v = BivariatePoly::constant(1);
  for (int k = 0; k < n; ++k) v = recursion_step(v);
  return v;
}

}  // namespace maxmean::volume
