#pragma once

#include "monicdyn/poly.hpp"
#include "monicdyn/rational.hpp"

#include <vector>

namespace monicdyn {

template <class T> using Matrix = std::vector<std::vector<T>>;

/// Exact determinant. Rows are cleared of denominators, then reduced with
/// fraction-free (Bareiss) elimination over the integers.
Rational determinant(const Matrix<Rational> &m);

/// Bareiss elimination over the integers.
Integer determinant(Matrix<Integer> m);

/// Bareiss elimination over Q[x_0, ..., x_{n-1}] with exact divisions.
Poly determinant(Matrix<Poly> m, int nvars);

/// Solves A x = b exactly for square nonsingular A; throws
/// std::domain_error when A is singular.
std::vector<Rational> solve(Matrix<Rational> a, std::vector<Rational> b);

} // namespace monicdyn
