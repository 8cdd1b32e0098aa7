#include "monicdyn/divisor.hpp"

#include "monicdyn/gcd.hpp"

namespace monicdyn {

Form restriction_to_H(const Form &f) {
  const int n = f.nvars();
  Poly r(n - 1);
  for (const auto &[m, c] : f.terms()) {
    if (m.last() != 0)
      continue;
    MultiIndex k(n - 1);
    for (int i = 0; i + 1 < n; ++i)
      k.set(i, m[i]);
    r.add_term(k, c);
  }
  return Form(std::move(r), f.degree());
}

bool in_div_star(const Form &f) {
  if (f.is_zero() || f.degree() < 1)
    return false;
  return restriction_to_H(f).terms().size() == 1;
}

Divisor normalize_divisor(const Form &f) {
  if (f.is_zero())
    throw NotInDivStar("normalize_divisor: zero form");
  if (f.degree() < 1)
    throw NotInDivStar("normalize_divisor: constant form");
  const Form h = restriction_to_H(f);
  if (h.terms().size() != 1)
    throw NotInDivStar("normalize_divisor: restriction to H is not a monomial: " + h.to_string());
  const auto &[mono, alpha] = *h.terms().begin();
  return Divisor(f * Rational(1 / alpha), mono.to_vector());
}

Divisor operator+(const Divisor &a, const Divisor &b) { return normalize_divisor(a.form_ * b.form_); }

} // namespace monicdyn
