#include "monicdyn/linalg.hpp"

#include "monicdyn/gcd.hpp"

#include <stdexcept>

namespace monicdyn {

Integer determinant(Matrix<Integer> m) {
  const std::size_t n = m.size();
  if (n == 0)
    return 1;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0)
        ++r;
      if (r == n)
        return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    const bool unit_step = m[k][k] == prev;
    mpz_ptr pivot = m[k][k].get_mpz_t();
    for (std::size_t i = k + 1; i < n; ++i) {
      const bool zero_lead = m[i][k] == 0;
      if (zero_lead && unit_step)
        continue;
      mpz_srcptr lead = m[i][k].get_mpz_t();
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_ptr e = m[i][j].get_mpz_t();
        const bool zero_right = zero_lead || m[k][j] == 0;
        if (zero_right && mpz_sgn(e) == 0)
          continue;
        mpz_mul(e, e, pivot);
        if (!zero_right)
          mpz_submul(e, lead, m[k][j].get_mpz_t());
        mpz_divexact(e, e, prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

Rational determinant(const Matrix<Rational> &m) {
  const std::size_t n = m.size();
  Matrix<Integer> im(n, std::vector<Integer>(n));
  Rational scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Integer l = 1;
    for (const auto &v : m[i])
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    for (std::size_t j = 0; j < n; ++j)
      im[i][j] = m[i][j].get_num() * (l / m[i][j].get_den());
    scale *= Rational(1, 1) / Rational(l);
  }
  Rational r(determinant(std::move(im)));
  r *= scale;
  return r;
}

Poly determinant(Matrix<Poly> m, int nvars) {
  const std::size_t n = m.size();
  if (n == 0)
    return Poly::constant(nvars, 1);
  int sign = 1;
  Poly prev = Poly::constant(nvars, 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].is_zero())
        ++r;
      if (r == n)
        return Poly(nvars);
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Poly t = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        if (prev.is_constant())
          m[i][j] = t * Rational(1 / prev.leading_coeff());
        else
          m[i][j] = divide_exact(t, prev).value();
      }
    }
    prev = m[k][k];
  }
  Poly d = m[n - 1][n - 1];
  if (sign < 0)
    d = -d;
  return d;
}

std::vector<Rational> solve(Matrix<Rational> a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv][k] == 0)
      ++piv;
    if (piv == n)
      throw std::domain_error("solve: singular system");
    std::swap(a[piv], a[k]);
    std::swap(b[piv], b[k]);
    const Rational inv = 1 / a[k][k];
    for (std::size_t j = k; j < n; ++j)
      a[k][j] *= inv;
    b[k] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a[i][k] == 0)
        continue;
      const Rational f = a[i][k];
      for (std::size_t j = k; j < n; ++j)
        a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  return b;
}

} // namespace monicdyn
