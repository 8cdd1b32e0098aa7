#pragma once

#include "monicdyn/multi_index.hpp"
#include "monicdyn/rational.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace monicdyn {

/// Sparse multivariate polynomial over the rationals in a fixed number of
/// variables. Terms are kept in canonical (descending grlex) order with no
/// zero coefficients, so structural equality is mathematical equality.
class Poly {
public:
  using Terms = std::map<MultiIndex, Rational, GrlexGreater>;

  Poly() = default;
  explicit Poly(int nvars) : nvars_(nvars) {}

  static Poly constant(int nvars, const Rational &c);
  static Poly monomial(const MultiIndex &m, const Rational &c = 1);
  static Poly variable(int nvars, int var);

  int nvars() const { return nvars_; }
  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::size_t size() const { return terms_.size(); }

  /// Total degree; -1 for the zero polynomial.
  int total_degree() const;
  int degree_in(int var) const;
  /// Smallest exponent of `var` over all terms (0 for zero).
  int min_degree_in(int var) const;
  bool is_homogeneous() const;

  Rational coeff(const MultiIndex &m) const;
  const MultiIndex &leading_monomial() const { return terms_.begin()->first; }
  const Rational &leading_coeff() const { return terms_.begin()->second; }

  /// Adds c * x^m in place.
  void add_term(const MultiIndex &m, const Rational &c);

  Poly &operator+=(const Poly &o);
  Poly &operator-=(const Poly &o);
  Poly &operator*=(const Rational &c);
  friend Poly operator+(Poly a, const Poly &b) { return a += b; }
  friend Poly operator-(Poly a, const Poly &b) { return a -= b; }
  friend Poly operator*(const Poly &a, const Poly &b);
  friend Poly operator*(Poly a, const Rational &c) { return a *= c; }
  friend Poly operator*(const Rational &c, Poly a) { return a *= c; }
  Poly operator-() const;
  friend bool operator==(const Poly &a, const Poly &b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  Poly pow(unsigned e) const;
  /// Multiplies by the monomial x^m.
  Poly shifted(const MultiIndex &m) const;
  Poly derivative(int var) const;
  Rational evaluate(std::span<const Rational> point) const;

  /// Substitutes x_var := value (value lives in the same ring).
  Poly substitute(int var, const Poly &value) const;
  /// Substitutes x_var := c.
  Poly specialize(int var, const Rational &c) const;
  /// Replaces x_var by c * x_var.
  Poly scale_variable(int var, const Rational &c) const;

  /// Drops variable `var` (which must not occur), reducing nvars by one.
  Poly remove_variable(int var) const;
  /// Inserts a new variable at position `pos` with exponent 0 everywhere.
  Poly insert_variable(int pos) const;

  /// Sets the last variable to 1 and drops it.
  Poly dehomogenize_last() const;
  /// Inverse of dehomogenize_last: appends a variable and pads every term
  /// to total degree `degree` (which must be >= total_degree()).
  Poly homogenize_last(int degree) const;

  /// Scales so the canonical leading coefficient is 1 (zero stays zero).
  Poly monic() const;

  std::string to_string(std::span<const std::string> names = {}) const;

private:
  int nvars_ = 0;
  Terms terms_;
};

/// Parses sums of terms like "3/2*x^2*z - y*z + 4" over default_names(nvars).
/// Throws ParseError on malformed input.
Poly parse_poly(std::string_view text, int nvars);

/// Default variable names: x, y, z for three variables, x0..xn otherwise.
std::vector<std::string> default_names(int nvars);

} // namespace monicdyn
