#include "monicdyn/gcd.hpp"

#include "monicdyn/divisor.hpp"

#include <cstdint>
#include <random>
#include <stdexcept>

namespace monicdyn {

namespace {

// Univariate arithmetic modulo the Mersenne prime 2^61 - 1, used for cheap
// one-sided certificates (coprime, squarefree) along random lines.
constexpr std::uint64_t kModulus = (std::uint64_t{1} << 61) - 1;
using ModPoly = std::vector<std::uint64_t>; // ascending coefficients, trimmed

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 t = static_cast<unsigned __int128>(a) * b;
  std::uint64_t r = static_cast<std::uint64_t>(t & kModulus) + static_cast<std::uint64_t>(t >> 61);
  return r >= kModulus ? r - kModulus : r;
}
std::uint64_t add_mod(std::uint64_t a, std::uint64_t b) { return a + b >= kModulus ? a + b - kModulus : a + b; }
std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kModulus - b; }
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1U)
      r = mul_mod(r, a);
    a = mul_mod(a, a);
    e >>= 1U;
  }
  return r;
}
std::uint64_t inv_mod(std::uint64_t a) { return pow_mod(a, kModulus - 2); }

std::optional<std::uint64_t> reduce(const Rational &q) {
  static const Integer m(std::to_string(kModulus));
  Integer num = q.get_num() % m, den = q.get_den() % m;
  if (num < 0)
    num += m;
  if (den == 0)
    return std::nullopt;
  return mul_mod(std::stoull(num.get_str()), inv_mod(std::stoull(den.get_str())));
}

void trim(ModPoly &p) {
  while (!p.empty() && p.back() == 0)
    p.pop_back();
}

ModPoly mul(const ModPoly &a, const ModPoly &b) {
  if (a.empty() || b.empty())
    return {};
  ModPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = add_mod(r[i + j], mul_mod(a[i], b[j]));
  trim(r);
  return r;
}

ModPoly mod_gcd(ModPoly a, ModPoly b) {
  while (!b.empty()) {
    const std::uint64_t inv = inv_mod(b.back());
    while (a.size() >= b.size()) {
      const std::uint64_t f = mul_mod(a.back(), inv);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t k = 0; k < b.size(); ++k)
        a[shift + k] = sub_mod(a[shift + k], mul_mod(f, b[k]));
      trim(a);
      if (a.empty())
        break;
    }
    std::swap(a, b);
  }
  return a;
}

struct Line {
  std::vector<std::uint64_t> base, dir;
};

Line random_line(int nvars, unsigned attempt) {
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL + attempt);
  std::uniform_int_distribution<std::uint64_t> pick(1, kModulus - 1);
  Line l;
  for (int i = 0; i < nvars; ++i) {
    l.base.push_back(pick(rng));
    l.dir.push_back(pick(rng));
  }
  return l;
}

// f(base + t dir) mod p; nullopt if a coefficient does not reduce.
std::optional<ModPoly> along(const Poly &f, const Line &l) {
  const int n = f.nvars();
  std::vector<std::vector<ModPoly>> powers(n);
  for (int i = 0; i < n; ++i) {
    powers[i].push_back({1});
    ModPoly lin{l.base[i], l.dir[i]};
    for (int e = 1; e <= f.degree_in(i); ++e)
      powers[i].push_back(mul(powers[i].back(), lin));
  }
  ModPoly out;
  for (const auto &[m, c] : f.terms()) {
    auto cm = reduce(c);
    if (!cm)
      return std::nullopt;
    ModPoly term{*cm};
    for (int i = 0; i < n; ++i)
      if (m[i])
        term = mul(term, powers[i][m[i]]);
    if (out.size() < term.size())
      out.resize(term.size(), 0);
    for (std::size_t k = 0; k < term.size(); ++k)
      out[k] = add_mod(out[k], term[k]);
  }
  trim(out);
  return out;
}

ModPoly derivative(const ModPoly &p) {
  ModPoly r;
  for (std::size_t k = 1; k < p.size(); ++k)
    r.push_back(mul_mod(p[k], k % kModulus));
  trim(r);
  return r;
}

// A common factor G of a and b restricts to a line as a factor of degree
// deg G whenever a keeps its full degree there; a trivial gcd modulo p then
// rules G out.
bool certainly_coprime(const Form &a, const Form &b) {
  for (unsigned attempt = 0; attempt < 3; ++attempt) {
    const Line l = random_line(a.nvars(), attempt);
    auto ua = along(a.poly(), l), ub = along(b.poly(), l);
    if (!ua || !ub || static_cast<int>(ua->size()) != a.degree() + 1)
      continue;
    if (mod_gcd(*ua, *ub).size() == 1)
      return true;
  }
  return false;
}

bool certainly_squarefree(const Form &f) {
  for (unsigned attempt = 0; attempt < 3; ++attempt) {
    const Line l = random_line(f.nvars(), attempt);
    auto u = along(f.poly(), l);
    if (!u || static_cast<int>(u->size()) != f.degree() + 1)
      continue;
    if (mod_gcd(*u, derivative(*u)).size() == 1)
      return true;
  }
  return false;
}

} // namespace

std::vector<Poly> coefficients_in(const Poly &p, int var) {
  std::vector<Poly> out(std::max(p.degree_in(var) + 1, 0), Poly(p.nvars()));
  for (const auto &[m, c] : p.terms()) {
    MultiIndex k = m;
    k.set(var, 0);
    out[m[var]].add_term(k, c);
  }
  return out;
}

std::optional<Poly> divide_exact(const Poly &a, const Poly &b) {
  if (b.is_zero())
    throw std::domain_error("divide_exact: division by zero");
  Poly q(a.nvars());
  Poly r = a;
  const MultiIndex &lb = b.leading_monomial();
  const Rational lc_inv = 1 / b.leading_coeff();
  while (!r.is_zero()) {
    const MultiIndex lr = r.leading_monomial();
    if (!lb.divides(lr))
      return std::nullopt;
    const MultiIndex shift = lr - lb;
    const Rational c = r.leading_coeff() * lc_inv;
    q.add_term(shift, c);
    for (const auto &[m, v] : b.terms())
      r.add_term(m + shift, -c * v);
  }
  return q;
}

Poly pseudo_remainder(const Poly &a, const Poly &b, int var) {
  const int db = b.degree_in(var);
  auto bc = coefficients_in(b, var);
  const Poly &lc_b = bc.back();
  Poly r = a;
  MultiIndex shift(a.nvars());
  while (!r.is_zero()) {
    const int dr = r.degree_in(var);
    if (dr < db)
      break;
    Poly lc_r = coefficients_in(r, var).back();
    shift.set(var, dr - db);
    r = lc_b * r - (lc_r * b).shifted(shift);
  }
  return r;
}

namespace {

int first_variable(const Poly &a, const Poly &b) {
  for (int v = 0; v < a.nvars(); ++v)
    if (a.degree_in(v) > 0 || b.degree_in(v) > 0)
      return v;
  return -1;
}

Poly one(int nvars) { return Poly::constant(nvars, 1); }

// f / x_N^k for the largest such k.
Form strip_last(const Form &f) {
  const int last = f.nvars() - 1;
  const int k = f.poly().min_degree_in(last);
  if (k == 0)
    return f;
  MultiIndex m(f.nvars());
  m.set(last, k);
  return Form::of(divide_exact(f.poly(), Poly::monomial(m)).value());
}

// Radical of a form not divisible by x_N: f / gcd(f, df/dx_i for all i).
std::optional<Form> modular_radical(const Form &f) {
  if (f.nvars() != 3 || f.degree() == 0)
    return std::nullopt;
  Form g = f;
  for (int i = 0; i < 3 && g.degree() > 0; ++i) {
    const Form d = f.derivative(i);
    if (d.is_zero())
      continue;
    auto next = modular_gcd(g, d);
    if (!next)
      return std::nullopt;
    g = *next;
  }
  return g.degree() == 0 ? f : exact_quotient(f, g);
}

Poly primitive_part(const Poly &p, int var) {
  Poly c = content_in(p, var);
  if (c.is_constant())
    return p.monic();
  return divide_exact(p, c).value().monic();
}

} // namespace

Poly content_in(const Poly &p, int var) {
  Poly g(p.nvars());
  for (const Poly &c : coefficients_in(p, var)) {
    if (c.is_zero())
      continue;
    g = g.is_zero() ? c.monic() : gcd(g, c);
    if (g.is_constant())
      return one(p.nvars());
  }
  return g;
}

Poly gcd(const Poly &a, const Poly &b) {
  if (a.is_zero())
    return b.monic();
  if (b.is_zero())
    return a.monic();
  if (a.is_constant() || b.is_constant())
    return one(a.nvars());
  const int v = first_variable(a, b);
  if (a.degree_in(v) == 0)
    return gcd(a, content_in(b, v));
  if (b.degree_in(v) == 0)
    return gcd(content_in(a, v), b);

  const Poly ca = content_in(a, v);
  const Poly cb = content_in(b, v);
  const Poly c = gcd(ca, cb);
  Poly p = ca.is_constant() ? a.monic() : divide_exact(a, ca).value();
  Poly q = cb.is_constant() ? b.monic() : divide_exact(b, cb).value();
  if (p.degree_in(v) < q.degree_in(v))
    std::swap(p, q);
  Poly g;
  for (;;) {
    Poly r = pseudo_remainder(p, q, v);
    if (r.is_zero()) {
      g = q;
      break;
    }
    if (r.degree_in(v) == 0) {
      g = one(a.nvars());
      break;
    }
    p = std::move(q);
    q = primitive_part(r, v);
  }
  return (c * primitive_part(g, v)).monic();
}

Form form_gcd(const Form &a, const Form &b) {
  if (a.nvars() != b.nvars())
    throw std::invalid_argument("form_gcd: variable mismatch");
  if (a.is_zero())
    return Form::of(b.poly().monic());
  if (b.is_zero())
    return Form::of(a.poly().monic());
  if (a.degree() > 0 && b.degree() > 0 && certainly_coprime(a, b))
    return Form::of(Poly::constant(a.nvars(), 1));
  const int n = a.nvars();
  const int last = n - 1;
  const int v = std::min(a.poly().min_degree_in(last), b.poly().min_degree_in(last));
  MultiIndex xn(n);
  xn.set(last, v);
  if (auto g = modular_gcd(strip_last(a), strip_last(b)))
    return Form::of(g->poly().shifted(xn).monic());
  Poly g = gcd(a.poly().dehomogenize_last(), b.poly().dehomogenize_last());
  Poly h = g.homogenize_last(g.total_degree());
  return Form::of(h.shifted(xn).monic());
}

bool divides(const Form &a, const Form &b) {
  if (a.is_zero())
    return b.is_zero();
  if (b.is_zero())
    return true;
  return divide_exact(b.poly(), a.poly()).has_value();
}

Form exact_quotient(const Form &b, const Form &a) {
  auto q = divide_exact(b.poly(), a.poly());
  if (!q)
    throw std::domain_error("exact_quotient: divisor does not divide");
  return Form(std::move(*q), b.degree() - a.degree());
}

Form squarefree_radical(const Form &f) {
  if (f.is_zero())
    throw std::invalid_argument("squarefree_radical: zero form");
  if (f.degree() > 0 && certainly_squarefree(f)) {
    if (in_div_star(f))
      return normalize_divisor(f).form();
    return Form::of(f.poly().monic());
  }
  const int n = f.nvars();
  const int last = n - 1;
  const bool has_xn = f.poly().min_degree_in(last) > 0;
  if (auto r = modular_radical(strip_last(f))) {
    Form out = *r;
    if (has_xn)
      out = out * Form::of(Poly::variable(n, last));
    if (in_div_star(out))
      return normalize_divisor(out).form();
    return Form::of(out.poly().monic());
  }
  Poly a = f.poly().dehomogenize_last();
  Poly g = a;
  for (int i = 0; i < a.nvars() && !g.is_constant(); ++i)
    g = gcd(g, a.derivative(i));
  Poly r = g.is_constant() ? a : divide_exact(a, g).value();
  Poly h = r.homogenize_last(r.total_degree());
  if (has_xn) {
    MultiIndex xn(n);
    xn.set(last, 1);
    h = h.shifted(xn);
  }
  Form out = Form::of(h);
  if (in_div_star(out))
    return normalize_divisor(out).form();
  return Form::of(out.poly().monic());
}

} // namespace monicdyn
