#include "monicdyn/gcd.hpp"

#include <gmp.h>

#include <cstdint>
#include <optional>
#include <vector>

namespace monicdyn {

namespace {

using u64 = std::uint64_t;
using ModPoly = std::vector<u64>; // ascending, trimmed

struct Zp {
  u64 p;
  u64 add(u64 a, u64 b) const { return a + b >= p ? a + b - p : a + b; }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
  u64 mul(u64 a, u64 b) const { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p); }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    for (; e; e >>= 1U, a = mul(a, a))
      if (e & 1U)
        r = mul(r, a);
    return r;
  }
  u64 inv(u64 a) const { return pow(a, p - 2); }
  std::optional<u64> reduce(const Rational &q) const {
    const u64 den = mpz_fdiv_ui(q.get_den_mpz_t(), p);
    if (den == 0)
      return std::nullopt;
    return mul(mpz_fdiv_ui(q.get_num_mpz_t(), p), inv(den));
  }
};

const std::vector<u64> &primes() {
  static const std::vector<u64> ps = [] {
    std::vector<u64> out;
    Integer q = Integer(1) << 62;
    for (int i = 0; i < 24; ++i) {
      q -= Integer(1) << 40;
      Integer r;
      mpz_nextprime(r.get_mpz_t(), q.get_mpz_t());
      out.push_back(r.get_ui());
    }
    return out;
  }();
  return ps;
}

void trim(ModPoly &a) {
  while (!a.empty() && a.back() == 0)
    a.pop_back();
}

ModPoly monic_gcd(const Zp &F, ModPoly a, ModPoly b) {
  while (!b.empty()) {
    const u64 inv = F.inv(b.back());
    while (a.size() >= b.size()) {
      const u64 f = F.mul(a.back(), inv);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t k = 0; k < b.size(); ++k)
        a[shift + k] = F.sub(a[shift + k], F.mul(f, b[k]));
      trim(a);
      if (a.empty())
        break;
    }
    std::swap(a, b);
  }
  if (!a.empty()) {
    const u64 inv = F.inv(a.back());
    for (auto &c : a)
      c = F.mul(c, inv);
  }
  return a;
}

struct Term {
  int i, j;
  u64 c;
};

// f(x, beta + s x, 1) as a polynomial in x.
ModPoly evaluate(const Zp &F, const std::vector<Term> &terms, int degree, u64 beta, u64 s) {
  std::vector<ModPoly> pw{{1}};
  for (int e = 1; e <= degree; ++e) {
    const ModPoly &prev = pw.back();
    ModPoly next(prev.size() + 1, 0);
    for (std::size_t k = 0; k < prev.size(); ++k) {
      next[k] = F.add(next[k], F.mul(prev[k], beta));
      next[k + 1] = F.add(next[k + 1], F.mul(prev[k], s));
    }
    pw.push_back(std::move(next));
  }
  ModPoly out(degree + 1, 0);
  for (const Term &t : terms) {
    const ModPoly &y = pw[t.j];
    for (std::size_t k = 0; k < y.size(); ++k)
      out[t.i + k] = F.add(out[t.i + k], F.mul(t.c, y[k]));
  }
  trim(out);
  return out;
}

std::optional<std::vector<Term>> reduce_terms(const Zp &F, const Form &f) {
  std::vector<Term> out;
  for (const auto &[m, c] : f.terms()) {
    auto r = F.reduce(c);
    if (!r)
      return std::nullopt;
    out.push_back({m[0], m[1], *r});
  }
  return out;
}

// Coefficients of the interpolating polynomial through (xs[t], ys[t]).
std::vector<u64> interpolate(const Zp &F, const std::vector<u64> &xs, const std::vector<u64> &ys) {
  const std::size_t n = xs.size();
  std::vector<u64> coef = ys; // Newton divided differences
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = n - 1; i >= k; --i)
      coef[i] = F.mul(F.sub(coef[i], coef[i - 1]), F.inv(F.sub(xs[i], xs[i - k])));
  std::vector<u64> out(n, 0);
  for (std::size_t k = n; k-- > 0;) {
    // out = out * (y - xs[k]) + coef[k]
    std::vector<u64> next(n, 0);
    for (std::size_t i = 0; i + 1 < n; ++i)
      next[i + 1] = F.add(next[i + 1], out[i]);
    for (std::size_t i = 0; i < n; ++i)
      next[i] = F.sub(next[i], F.mul(out[i], xs[k]));
    next[0] = F.add(next[0], coef[k]);
    out = std::move(next);
  }
  return out;
}

// Image of the shifted gcd modulo p: image[k][j] is the coefficient of
// x^k y^j, monic in x. nullopt for an unusable prime.
struct Image {
  int degree;
  std::vector<std::vector<u64>> coeffs;
};

std::optional<Image> image_mod(const Zp &F, const Form &a, const Form &b, u64 s, u64 lead_a) {
  if (lead_a % F.p == 0)
    return std::nullopt;
  auto ta = reduce_terms(F, a), tb = reduce_terms(F, b);
  if (!ta || !tb)
    return std::nullopt;
  const int bound = std::min(a.degree(), b.degree());
  int best = bound + 1;
  std::vector<u64> xs;
  std::vector<ModPoly> gs;
  const int max_points = 4 * (bound + 2);
  for (int t = 1; t <= max_points; ++t) {
    const u64 beta = static_cast<u64>(t) * 0x9e3779b97f4a7c15ULL % F.p;
    const ModPoly g = monic_gcd(F, evaluate(F, *ta, a.degree(), beta, s), evaluate(F, *tb, b.degree(), beta, s));
    const int e = static_cast<int>(g.size()) - 1;
    if (e < best) {
      best = e;
      xs.clear();
      gs.clear();
    }
    if (e == best) {
      xs.push_back(beta);
      gs.push_back(g);
    }
    if (best == 0 || static_cast<int>(xs.size()) == best + 1)
      break;
  }
  if (best > 0 && static_cast<int>(xs.size()) != best + 1)
    return std::nullopt;
  Image img{best, std::vector<std::vector<u64>>(best + 1)};
  img.coeffs[best] = std::vector<u64>(1, 1);
  for (int k = 0; k < best; ++k) {
    std::vector<u64> ys;
    for (const auto &g : gs)
      ys.push_back(g[k]);
    img.coeffs[k] = interpolate(F, xs, ys);
  }
  return img;
}

std::optional<Rational> rational_reconstruction(const Integer &u, const Integer &m) {
  // Extended Euclid on (m, u) stopped at |r| <= sqrt(m / 2).
  Integer bound;
  mpz_sqrt(bound.get_mpz_t(), Integer(m / 2).get_mpz_t());
  Integer r0 = m, r1 = u, t0 = 0, t1 = 1;
  while (r1 > bound) {
    const Integer q = r0 / r1;
    Integer r2 = r0 - q * r1, t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (t1 == 0 || abs(t1) > bound)
    return std::nullopt;
  Integer g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1)
    return std::nullopt;
  Rational q(r1, t1);
  q.canonicalize();
  return q;
}

} // namespace

std::optional<Form> modular_gcd(const Form &a, const Form &b) {
  if (a.nvars() != 3 || b.nvars() != 3 || a.is_zero() || b.is_zero())
    return std::nullopt;
  // Shift y -> y + s x so that a becomes monic in x up to a constant:
  // the x^deg coefficient is a(1, s, 0).
  u64 s = 0;
  Rational lead = 0;
  for (u64 cand = 1; cand <= static_cast<u64>(a.degree()) + 1 && lead == 0; ++cand) {
    Rational v = 0;
    for (const auto &[m, c] : a.terms())
      if (m[2] == 0) {
        Rational pw = c;
        for (int e = 0; e < m[1]; ++e)
          pw *= static_cast<long>(cand);
        v += pw;
      }
    if (v != 0) {
      s = cand;
      lead = v;
    }
  }
  if (lead == 0)
    return std::nullopt;

  std::optional<Image> acc;
  std::vector<std::vector<Integer>> residues;
  Integer modulus = 1;
  for (u64 p : primes()) {
    const Zp F{p};
    auto lr = F.reduce(lead);
    if (!lr)
      continue;
    auto img = image_mod(F, a, b, s, *lr);
    if (!img)
      continue;
    if (img->degree == 0)
      return Form::of(Poly::constant(3, 1));
    if (acc && img->degree > acc->degree)
      continue;
    if (!acc || img->degree < acc->degree) {
      acc = img;
      modulus = 1;
      residues.assign(img->degree + 1, {});
      for (int k = 0; k <= img->degree; ++k)
        residues[k].assign(img->degree + 1, Integer(0));
    }
    // Chinese remaindering of every coefficient.
    const Integer P(static_cast<unsigned long>(p));
    Integer minv;
    mpz_invert(minv.get_mpz_t(), modulus.get_mpz_t(), P.get_mpz_t());
    for (int k = 0; k <= img->degree; ++k)
      for (int j = 0; j <= img->degree; ++j) {
        const u64 v = j < static_cast<int>(img->coeffs[k].size()) ? img->coeffs[k][j] : 0;
        Integer &r = residues[k][j];
        Integer diff = (Integer(static_cast<unsigned long>(v)) - r) % P;
        if (diff < 0)
          diff += P;
        r += modulus * ((diff * minv) % P);
      }
    modulus *= P;

    // Rebuild in the original coordinates and check by exact division.
    const int m = img->degree;
    Poly shifted(3);
    bool ok = true;
    for (int k = 0; k <= m && ok; ++k)
      for (int j = 0; j + k <= m && ok; ++j) {
        auto q = rational_reconstruction(residues[k][j], modulus);
        if (!q) {
          ok = false;
          break;
        }
        if (*q != 0)
          shifted.add_term(MultiIndex{k, j, m - k - j}, *q);
      }
    if (!ok)
      continue;
    const Poly x = Poly::variable(3, 0), y = Poly::variable(3, 1);
    const Poly g = shifted.substitute(1, y - x * Rational(static_cast<long>(s)));
    if (g.is_zero() || !g.is_homogeneous())
      continue;
    const Form G = Form::of(g.monic());
    if (divides(G, a) && divides(G, b))
      return G;
  }
  return std::nullopt;
}

} // namespace monicdyn
