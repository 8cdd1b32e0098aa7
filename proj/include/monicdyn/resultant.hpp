#pragma once

#include "monicdyn/divisor.hpp"
#include "monicdyn/form.hpp"
#include "monicdyn/poly_map.hpp"

#include <stdexcept>
#include <vector>

namespace monicdyn {

class InvalidProblem : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Every fallback of the resultant computation was exhausted. This is a
/// defect for valid inputs.
class ResultantFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// N + 1 forms in N + 1 variables with numeric coefficients.
struct ResultantProblem {
  std::vector<Form> forms;

  /// Sum(d_i - 1) + 1.
  int critical_degree() const;
};

struct MacaulayOptions {
  /// Random changes of variables tried when the extraneous minor vanishes.
  int max_retries = 8;
  /// Skip the direct attempt (exercises the change-of-variables path).
  bool force_change_of_variables = false;
  /// Skip straight to the perturbation fallback.
  bool force_perturbation = false;
};

/// Macaulay resultant normalized by Res(x_0^{d_0}, ..., x_N^{d_N}) = 1,
/// computed as det(M) / det(M') on the Macaulay matrix in the critical
/// degree. A vanishing extraneous minor is handled by random integer
/// changes of variables, then by a perturbation x_i^{d_i} * s interpolated
/// back to s = 0.
Rational macaulay_resultant(const ResultantProblem &p, const MacaulayOptions &opts = {});

/// F(A x) for a square matrix A (row j gives the image of x_j).
Form compose_linear(const Form &f, const std::vector<std::vector<Rational>> &a);

/// Res(F_D, f) as a form in y_0, ..., y_N, Div*-normalized: the divisor
/// f_*(D), of degree d^{N-1} deg(D).
///
/// Computed as the norm of F_D(x, 1) from Q[y][x] / (f_i(x, 1) - y_i), i.e.
/// the determinant of multiplication by F_D on the basis x^b, b_i < d.
Divisor pushforward(const PolyMap &f, const Divisor &D);

/// Same divisor, computed by evaluating Macaulay resultants
/// Res_x(y_0 x_N^d - f_0, ..., y_{N-1} x_N^d - f_{N-1}, F_D) on a fixed
/// rational grid of affine y-points and interpolating. Slow; kept as an
/// independent route for cross-checking.
Divisor pushforward_by_interpolation(const PolyMap &f, const Divisor &D);

/// The unnormalized affine norm N(y_0..y_{N-1}) of F_D(x, 1); exposed for tests.
Poly pushforward_norm(const PolyMap &f, const Form &F);

} // namespace monicdyn
