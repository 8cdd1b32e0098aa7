#include "monicdyn/resultant.hpp"

#include "monicdyn/linalg.hpp"

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <unordered_map>

namespace monicdyn {

int ResultantProblem::critical_degree() const {
  int t = 1;
  for (const auto &f : forms)
    t += f.degree() - 1;
  return t;
}

namespace {

void validate(const ResultantProblem &p) {
  const int n = static_cast<int>(p.forms.size());
  if (n < 1)
    throw InvalidProblem("macaulay_resultant: no forms");
  for (const auto &f : p.forms) {
    if (f.nvars() != n)
      throw InvalidProblem("macaulay_resultant: need as many forms as variables");
    if (f.degree() < 1)
      throw InvalidProblem("macaulay_resultant: form degrees must be >= 1");
  }
}

/// det(M) / det(M'), or nullopt when det(M') vanishes.
std::optional<Rational> macaulay_quotient(const std::vector<Form> &forms) {
  const int n = static_cast<int>(forms.size());
  int t = 1;
  for (const auto &f : forms)
    t += f.degree() - 1;
  const auto monos = indices_of_degree(n, t);
  std::map<MultiIndex, std::size_t, GrlexGreater> col;
  for (std::size_t k = 0; k < monos.size(); ++k)
    col.emplace(monos[k], k);

  const std::size_t size = monos.size();
  Matrix<Rational> m(size, std::vector<Rational>(size));
  std::vector<std::size_t> nonreduced;
  for (std::size_t r = 0; r < size; ++r) {
    const MultiIndex &alpha = monos[r];
    int slot = -1;
    int hits = 0;
    for (int i = 0; i < n; ++i) {
      if (alpha[i] >= forms[i].degree()) {
        ++hits;
        if (slot < 0)
          slot = i;
      }
    }
    if (hits > 1)
      nonreduced.push_back(r);
    MultiIndex shift = alpha;
    shift.set(slot, alpha[slot] - forms[slot].degree());
    for (const auto &[mono, c] : forms[slot].terms())
      m[r][col.at(mono + shift)] = c;
  }

  Matrix<Rational> minor(nonreduced.size(), std::vector<Rational>(nonreduced.size()));
  for (std::size_t i = 0; i < nonreduced.size(); ++i)
    for (std::size_t j = 0; j < nonreduced.size(); ++j)
      minor[i][j] = m[nonreduced[i]][nonreduced[j]];
  const Rational den = determinant(minor);
  if (den == 0)
    return std::nullopt;
  return determinant(m) / den;
}

Rational perturbation_fallback(const std::vector<Form> &forms) {
  const int n = static_cast<int>(forms.size());
  // Res(F_i + s x_i^{d_i}) is a polynomial in s of degree <= sum_j prod_{i != j} d_i.
  long long deg = 0;
  for (int j = 0; j < n; ++j) {
    long long prod = 1;
    for (int i = 0; i < n; ++i)
      if (i != j)
        prod *= forms[i].degree();
    deg += prod;
  }
  std::vector<Rational> xs, ys;
  for (long long s = 1; static_cast<long long>(xs.size()) <= deg && s < 64 * (deg + 4); ++s) {
    std::vector<Form> perturbed;
    for (int i = 0; i < n; ++i) {
      MultiIndex m(n);
      m.set(i, forms[i].degree());
      perturbed.push_back(forms[i] + Form(Poly::monomial(m, Rational(static_cast<long>(s))), forms[i].degree()));
    }
    if (auto v = macaulay_quotient(perturbed)) {
      xs.emplace_back(static_cast<long>(s));
      ys.push_back(*v);
    }
  }
  if (static_cast<long long>(xs.size()) <= deg)
    throw ResultantFailure("macaulay_resultant: perturbation fallback exhausted");
  // Lagrange evaluation at s = 0.
  Rational value = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Rational w = ys[i];
    for (std::size_t j = 0; j < xs.size(); ++j)
      if (j != i)
        w *= xs[j] / (xs[j] - xs[i]);
    value += w;
  }
  return value;
}

} // namespace

Form compose_linear(const Form &f, const std::vector<std::vector<Rational>> &a) {
  const int n = f.nvars();
  std::vector<std::vector<Poly>> powers(n);
  for (int j = 0; j < n; ++j) {
    Poly l(n);
    for (int k = 0; k < n; ++k)
      l.add_term(Poly::variable(n, k).leading_monomial(), a[j][k]);
    powers[j].push_back(Poly::constant(n, 1));
    for (int e = 1; e <= f.degree(); ++e)
      powers[j].push_back(powers[j].back() * l);
  }
  Poly out(n);
  for (const auto &[m, c] : f.terms()) {
    Poly term = Poly::constant(n, c);
    for (int j = 0; j < n; ++j)
      if (m[j])
        term = term * powers[j][m[j]];
    out += term;
  }
  return Form(std::move(out), f.degree());
}

Rational macaulay_resultant(const ResultantProblem &p, const MacaulayOptions &opts) {
  validate(p);
  for (const auto &f : p.forms)
    if (f.is_zero())
      return 0;
  if (!opts.force_change_of_variables && !opts.force_perturbation)
    if (auto v = macaulay_quotient(p.forms))
      return *v;

  const int n = static_cast<int>(p.forms.size());
  if (!opts.force_perturbation) {
    long long total = 1;
    for (const auto &f : p.forms)
      total *= f.degree();
    std::mt19937 rng(0x5eedU);
    std::uniform_int_distribution<int> entry(-9, 9);
    for (int attempt = 0; attempt < opts.max_retries; ++attempt) {
      std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
      for (auto &row : a)
        for (auto &v : row)
          v = entry(rng);
      const Rational det_a = determinant(a);
      if (det_a == 0)
        continue;
      std::vector<Form> moved;
      for (const auto &f : p.forms)
        moved.push_back(compose_linear(f, a));
      if (auto v = macaulay_quotient(moved)) {
        // Res(F o A) = det(A)^{d_0 ... d_N} Res(F).
        Rational scale = 1;
        for (long long k = 0; k < total; ++k)
          scale *= det_a;
        return *v / scale;
      }
    }
  }
  return perturbation_fallback(p.forms);
}

Poly pushforward_norm(const PolyMap &f, const Form &F) {
  const int N = f.N();
  const int d = f.d();
  if (F.nvars() != N + 1)
    throw InvalidProblem("pushforward: divisor lives in the wrong number of variables");

  // Tails h_i = f_i(x, 1) - x_i^d: the relations read x_i^d = y_i - h_i.
  std::vector<Poly> tails;
  for (int i = 0; i < N; ++i) {
    Poly h = f.affine_component(i);
    MultiIndex lead(N);
    lead.set(i, d);
    h.add_term(lead, -1);
    tails.push_back(std::move(h));
  }

  // Basis x^b with 0 <= b_i < d.
  std::vector<MultiIndex> basis;
  std::map<MultiIndex, std::size_t, GrlexGreater> basis_pos;
  {
    MultiIndex b(N);
    std::function<void(int)> gen = [&](int pos) {
      if (pos == N) {
        basis_pos.emplace(b, basis.size());
        basis.push_back(b);
        return;
      }
      for (int e = 0; e < d; ++e) {
        b.set(pos, e);
        gen(pos + 1);
      }
    };
    gen(0);
  }

  const Poly F_aff = F.poly().dehomogenize_last();
  const std::size_t size = basis.size();
  Matrix<Poly> mult(size, std::vector<Poly>(size, Poly(N)));
  for (std::size_t j = 0; j < size; ++j) {
    std::map<MultiIndex, Poly, GrlexGreater> work;
    for (const auto &[m, c] : F_aff.terms())
      work.emplace(m + basis[j], Poly::constant(N, c));
    while (!work.empty()) {
      auto node = work.extract(work.begin());
      const MultiIndex &m = node.key();
      Poly &coef = node.mapped();
      if (coef.is_zero())
        continue;
      int var = -1;
      for (int i = 0; i < N; ++i)
        if (m[i] >= d) {
          var = i;
          break;
        }
      if (var < 0) {
        mult[basis_pos.at(m)][j] += coef;
        continue;
      }
      MultiIndex rest = m;
      rest.set(var, m[var] - d);
      MultiIndex yv(N);
      yv.set(var, 1);
      auto add = [&](const MultiIndex &at, Poly value) {
        auto [it, inserted] = work.try_emplace(at, std::move(value));
        if (!inserted)
          it->second += value;
      };
      add(rest, coef.shifted(yv));
      for (const auto &[t, a] : tails[var].terms())
        add(rest + t, coef * Rational(-a));
    }
  }
  return determinant(std::move(mult), N);
}

Divisor pushforward(const PolyMap &f, const Divisor &D) {
  int out_degree = D.degree();
  for (int k = 1; k < f.N(); ++k)
    out_degree *= f.d();
  Poly g = pushforward_norm(f, D.form());
  return normalize_divisor(Form(g.homogenize_last(out_degree), out_degree));
}

Divisor pushforward_by_interpolation(const PolyMap &f, const Divisor &D) {
  const int N = f.N();
  const int d = f.d();
  int out_degree = D.degree();
  for (int k = 1; k < N; ++k)
    out_degree *= d;

  // Fixed value sequence 1, -1, 2, -2, ...; a lower set of a tensor grid is
  // unisolvent for the monomials of total degree <= out_degree.
  auto value = [](int k) { return Rational(k % 2 == 0 ? k / 2 + 1 : -(k / 2 + 1)); };
  std::vector<MultiIndex> exps;
  for (int t = 0; t <= out_degree; ++t)
    for (const auto &m : indices_of_degree(N, t))
      exps.push_back(m);

  std::vector<Form> forms;
  for (int i = 0; i < N; ++i)
    forms.push_back(f.component(i));
  MultiIndex zd(N + 1);
  zd.set(N, d);

  const std::size_t count = exps.size();
  Matrix<Rational> vander(count, std::vector<Rational>(count));
  std::vector<Rational> rhs(count);
  for (std::size_t r = 0; r < count; ++r) {
    std::vector<Rational> y(N);
    for (int i = 0; i < N; ++i)
      y[i] = value(exps[r][i]);
    ResultantProblem prob;
    for (int i = 0; i < N; ++i)
      prob.forms.push_back(Form(Poly::monomial(zd, y[i]), d) - forms[i]);
    prob.forms.push_back(D.form());
    rhs[r] = macaulay_resultant(prob);
    for (std::size_t c = 0; c < count; ++c) {
      Rational v = 1;
      for (int i = 0; i < N; ++i)
        for (int e = 0; e < exps[c][i]; ++e)
          v *= y[i];
      vander[r][c] = v;
    }
  }
  const auto coeffs = solve(std::move(vander), std::move(rhs));
  Poly g(N);
  for (std::size_t c = 0; c < count; ++c)
    g.add_term(exps[c], coeffs[c]);
  return normalize_divisor(Form(g.homogenize_last(out_degree), out_degree));
}

} // namespace monicdyn
