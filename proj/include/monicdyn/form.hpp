#pragma once

#include "monicdyn/poly.hpp"

#include <stdexcept>

namespace monicdyn {

/// Homogeneous form of a declared degree. The zero form is representable
/// (it is homogeneous of every degree) but never accepted as a divisor.
class Form {
public:
  Form() = default;
  Form(int nvars, int degree) : poly_(nvars), degree_(degree) {}

  /// Throws std::invalid_argument unless p is zero or homogeneous of `degree`.
  Form(Poly p, int degree) : poly_(std::move(p)), degree_(degree) {
    if (!poly_.is_zero() && (!poly_.is_homogeneous() || poly_.total_degree() != degree))
      throw std::invalid_argument("Form: polynomial is not homogeneous of the declared degree");
  }
  /// Wraps a nonzero homogeneous polynomial, taking its degree.
  static Form of(Poly p) {
    if (p.is_zero())
      throw std::invalid_argument("Form::of: zero polynomial has no degree");
    const int deg = p.total_degree();
    return Form(std::move(p), deg);
  }

  const Poly &poly() const { return poly_; }
  int degree() const { return degree_; }
  int nvars() const { return poly_.nvars(); }
  bool is_zero() const { return poly_.is_zero(); }
  const Poly::Terms &terms() const { return poly_.terms(); }
  Rational coeff(const MultiIndex &m) const { return poly_.coeff(m); }

  friend Form operator+(const Form &a, const Form &b) {
    check_same(a, b);
    return Form(a.poly_ + b.poly_, a.degree_);
  }
  friend Form operator-(const Form &a, const Form &b) {
    check_same(a, b);
    return Form(a.poly_ - b.poly_, a.degree_);
  }
  friend Form operator*(const Form &a, const Form &b) {
    return Form(a.poly_ * b.poly_, a.degree_ + b.degree_);
  }
  friend Form operator*(const Form &a, const Rational &c) { return Form(a.poly_ * c, a.degree_); }
  friend Form operator*(const Rational &c, const Form &a) { return a * c; }
  friend bool operator==(const Form &a, const Form &b) {
    return a.degree_ == b.degree_ && a.poly_ == b.poly_;
  }

  Form derivative(int var) const { return Form(poly_.derivative(var), degree_ > 0 ? degree_ - 1 : 0); }
  Form pow(unsigned e) const { return Form(poly_.pow(e), degree_ * static_cast<int>(e)); }

  std::string to_string(std::span<const std::string> names = {}) const { return poly_.to_string(names); }

private:
  static void check_same(const Form &a, const Form &b) {
    if (a.degree_ != b.degree_ || a.nvars() != b.nvars())
      throw std::invalid_argument("Form: degree or variable mismatch");
  }

  Poly poly_;
  int degree_ = 0;
};

} // namespace monicdyn
