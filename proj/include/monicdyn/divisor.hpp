#pragma once

#include "monicdyn/form.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace monicdyn {

/// Raised when a form's restriction to H : {x_N = 0} is not a single monomial.
class NotInDivStar : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// F(x_0, ..., x_{N-1}, 0) as a form in N variables.
Form restriction_to_H(const Form &f);

/// Effective divisor in Div*, stored through its normalized defining form:
/// the restriction to H is prod x_i^{e_i} with coefficient exactly 1.
class Divisor {
public:
  const Form &form() const { return form_; }
  int degree() const { return form_.degree(); }
  int nvars() const { return form_.nvars(); }
  /// Exponents e_i of the H-restriction monomial (length N).
  const std::vector<int> &h_exponents() const { return exponents_; }

  friend bool operator==(const Divisor &a, const Divisor &b) { return a.form_ == b.form_; }

  /// Divisor sum: product of defining forms.
  friend Divisor operator+(const Divisor &a, const Divisor &b);

private:
  friend Divisor normalize_divisor(const Form &f);
  Divisor(Form f, std::vector<int> e) : form_(std::move(f)), exponents_(std::move(e)) {}

  Form form_;
  std::vector<int> exponents_;
};

/// Scales f so its H-restriction is a monic monomial. Throws NotInDivStar
/// if the restriction is zero or has two or more terms, and for constant or
/// zero forms.
Divisor normalize_divisor(const Form &f);

/// Non-throwing membership test.
bool in_div_star(const Form &f);

} // namespace monicdyn
