#pragma once

#include "monicdyn/form.hpp"
#include "monicdyn/poly.hpp"

#include <optional>
#include <vector>

namespace monicdyn {

/// Coefficients of p viewed as a polynomial in x_var: result[e] is the
/// coefficient of x_var^e (a polynomial free of x_var, same ring).
std::vector<Poly> coefficients_in(const Poly &p, int var);

/// Exact quotient a / b, or nullopt when b does not divide a.
std::optional<Poly> divide_exact(const Poly &a, const Poly &b);

inline bool divides(const Poly &a, const Poly &b) { return divide_exact(b, a).has_value(); }

/// Pseudo-remainder of a by b with respect to x_var.
Poly pseudo_remainder(const Poly &a, const Poly &b, int var);

/// Greatest common divisor over Q, scaled so the leading coefficient is 1.
/// Content / primitive-part recursion over the variables with primitive
/// remainder sequences in each main variable.
Poly gcd(const Poly &a, const Poly &b);

/// gcd of the coefficients of p with respect to x_var.
Poly content_in(const Poly &p, int var);

// Form-level operations.

/// gcd of two forms, canonical-scaled (leading coefficient 1).
Form form_gcd(const Form &a, const Form &b);

/// gcd of forms in three variables, a not divisible by the last one, from
/// images modulo word-sized primes checked by exact division. nullopt when
/// the primes run out or the shape is unsupported.
std::optional<Form> modular_gcd(const Form &a, const Form &b);

/// True iff b = a * q for some form q.
bool divides(const Form &a, const Form &b);

/// Exact quotient b / a; throws std::domain_error if a does not divide b.
Form exact_quotient(const Form &b, const Form &a);

/// Squarefree part of f (same support, multiplicities one). The result is
/// Div*-normalized when it lies in Div*, and monic otherwise.
Form squarefree_radical(const Form &f);

} // namespace monicdyn
