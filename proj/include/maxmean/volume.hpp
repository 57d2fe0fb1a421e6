#pragma once

#include <map>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace maxmean::volume {

using Rational = boost::multiprecision::cpp_rational;

/// Exact polynomial in (x, t) with rational coefficients. Zero coefficients
/// are never stored, so two polynomials are equal iff their maps are equal.
class BivariatePoly {
 public:
  /// (degree in x, degree in t)
  using Monomial = std::pair<int, int>;
  using Terms = std::map<Monomial, Rational>;

  BivariatePoly() = default;
  static BivariatePoly constant(const Rational& c);

  void add(int deg_x, int deg_t, const Rational& c);
  Rational coefficient(int deg_x, int deg_t) const;
  const Terms& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int total_degree() const;
  /// Coefficients of the t = 0 restriction, keyed by degree in x.
  std::map<int, Rational> at_t_zero() const;
  double evaluate(double x, double t) const;
  std::string to_string() const;

  BivariatePoly operator*(const BivariatePoly& other) const;
  BivariatePoly& operator*=(const Rational& c);
  friend bool operator==(const BivariatePoly&, const BivariatePoly&) = default;

 private:
  Terms terms_;
};

/// V_{n+1}(x, t) = integral_0^{x+t} V_n(x, s) ds: antidifferentiate in the
/// second variable and substitute s := x + t.
BivariatePoly recursion_step(const BivariatePoly& v);

/// V_n(x, t) = (x + t)((n+1)x + t)^(n-1) / n!, with V_0 = 1.
BivariatePoly closed_form(int n);

/// Iterates recursion_step n times from V_0 = 1.
BivariatePoly by_recursion(int n);

}  // namespace maxmean::volume
