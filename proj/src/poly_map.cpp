#include "monicdyn/poly_map.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace monicdyn {

PolyMap::PolyMap(int N, int d) : N_(N), d_(d) {
  if (N < 1 || d < 2 || N + 1 > MultiIndex::kMaxVars)
    throw std::invalid_argument("PolyMap: need N >= 1 and d >= 2");
  indices_ = ind_star(N, d);
  coeffs_.assign(N, std::vector<Rational>(indices_.size(), Rational(0)));
}

PolyMap PolyMap::quadratic(const Rational &a, const Rational &b, const Rational &c, const Rational &d) {
  PolyMap f(2, 2);
  f.set_coeff(0, MultiIndex{1, 0, 1}, a);
  f.set_coeff(0, MultiIndex{0, 1, 1}, b);
  f.set_coeff(1, MultiIndex{1, 0, 1}, c);
  f.set_coeff(1, MultiIndex{0, 1, 1}, d);
  return f;
}

Rational PolyMap::coeff(int i, const MultiIndex &I) const {
  auto it = std::find(indices_.begin(), indices_.end(), I);
  if (it == indices_.end())
    throw std::invalid_argument("PolyMap: index not in Ind*(N, d)");
  return coeffs_[i][static_cast<std::size_t>(it - indices_.begin())];
}

void PolyMap::set_coeff(int i, const MultiIndex &I, const Rational &value) {
  if (i < 0 || i >= N_)
    throw std::out_of_range("PolyMap: coordinate index");
  auto it = std::find(indices_.begin(), indices_.end(), I);
  if (it == indices_.end())
    throw std::invalid_argument("PolyMap: index not in Ind*(N, d)");
  coeffs_[i][static_cast<std::size_t>(it - indices_.begin())] = value;
}

Form PolyMap::component(int i) const {
  Poly p(nvars());
  MultiIndex lead(nvars());
  lead.set(i, d_);
  p.add_term(lead, 1);
  if (i < N_)
    for (std::size_t k = 0; k < indices_.size(); ++k)
      p.add_term(indices_[k], coeffs_[i][k]);
  return Form(std::move(p), d_);
}

Poly PolyMap::affine_component(int i) const { return component(i).poly().dehomogenize_last(); }

PolyMap PolyMap::graded(const Rational &alpha) const {
  PolyMap g = *this;
  for (int i = 0; i < N_; ++i)
    for (std::size_t k = 0; k < indices_.size(); ++k) {
      Rational s = 1;
      for (int e = 0; e < indices_[k].last(); ++e)
        s *= alpha;
      g.coeffs_[i][k] *= s;
    }
  return g;
}

std::array<Rational, 4> PolyMap::quadratic_params() const {
  if (N_ != 2 || d_ != 2)
    throw std::invalid_argument("quadratic_params: not a quadratic-family map");
  return {coeff(0, MultiIndex{1, 0, 1}), coeff(0, MultiIndex{0, 1, 1}), coeff(1, MultiIndex{1, 0, 1}),
          coeff(1, MultiIndex{0, 1, 1})};
}

std::string PolyMap::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i <= N_; ++i) {
    if (i)
      os << " : ";
    os << component(i).to_string();
  }
  os << "]";
  return os.str();
}

namespace {

// Laplace expansion along the first row; matrices here are N x N with N small.
Poly determinant(std::vector<std::vector<Poly>> m, int nvars) {
  const std::size_t n = m.size();
  if (n == 1)
    return m[0][0];
  Poly det(nvars);
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero())
      continue;
    std::vector<std::vector<Poly>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Poly> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j)
          row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    Poly term = m[0][j] * determinant(std::move(minor), nvars);
    if (j % 2)
      det -= term;
    else
      det += term;
  }
  return det;
}

} // namespace

Form jacobian_form(const PolyMap &f) {
  const int N = f.N();
  std::vector<std::vector<Poly>> m(N);
  for (int i = 0; i < N; ++i) {
    const Poly fi = f.component(i).poly();
    for (int j = 0; j < N; ++j)
      m[i].push_back(fi.derivative(j));
  }
  return Form(determinant(std::move(m), f.nvars()), N * (f.d() - 1));
}

Divisor critical_divisor(const PolyMap &f) { return normalize_divisor(jacobian_form(f)); }

} // namespace monicdyn
