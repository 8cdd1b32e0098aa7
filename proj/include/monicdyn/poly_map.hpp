#pragma once

#include "monicdyn/divisor.hpp"
#include "monicdyn/form.hpp"

#include <array>
#include <string>
#include <vector>

namespace monicdyn {

/// A point of the parameter space Pow(N, d): the map
///   f_i = x_i^d + sum_{I in Ind*(N,d)} a_{i,I} x^I   (0 <= i < N),
///   f_N = x_N^d.
class PolyMap {
public:
  /// The d-th power map on P^N.
  PolyMap(int N, int d);

  /// Quadratic family on P^2: (x^2 + a x z + b y z, y^2 + c x z + d y z, z^2).
  static PolyMap quadratic(const Rational &a, const Rational &b, const Rational &c, const Rational &d);

  int N() const { return N_; }
  int d() const { return d_; }
  int nvars() const { return N_ + 1; }
  /// Ind*(N, d) in canonical order; coefficient slots follow this order.
  const std::vector<MultiIndex> &indices() const { return indices_; }
  /// dim Pow(N, d) = N * #Ind*(N, d).
  int dimension() const { return N_ * static_cast<int>(indices_.size()); }

  const Rational &coeff(int i, std::size_t k) const { return coeffs_[i][k]; }
  Rational coeff(int i, const MultiIndex &I) const;
  void set_coeff(int i, const MultiIndex &I, const Rational &value);
  void set_coeff(int i, std::size_t k, const Rational &value) { coeffs_[i][k] = value; }

  /// f_i as a form of degree d in N + 1 variables (i = N gives x_N^d).
  Form component(int i) const;
  /// f_i(x_0, ..., x_{N-1}, 1) for i < N, in N variables.
  Poly affine_component(int i) const;

  /// Applies the grading action a_{i,I} -> alpha^{I_N} a_{i,I}.
  PolyMap graded(const Rational &alpha) const;

  /// (a, b, c, d) for maps in the quadratic family; throws otherwise.
  std::array<Rational, 4> quadratic_params() const;

  friend bool operator==(const PolyMap &a, const PolyMap &b) {
    return a.N_ == b.N_ && a.d_ == b.d_ && a.coeffs_ == b.coeffs_;
  }

  std::string to_string() const;

private:
  int N_;
  int d_;
  std::vector<MultiIndex> indices_;
  std::vector<std::vector<Rational>> coeffs_;
};

/// det(d f_i / d x_j)_{0 <= i, j < N}: a form of degree N(d-1).
Form jacobian_form(const PolyMap &f);

/// C_f: the Div*-normalized Jacobian form, of degree N(d-1).
Divisor critical_divisor(const PolyMap &f);

} // namespace monicdyn
