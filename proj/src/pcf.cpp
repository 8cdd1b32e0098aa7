#include "monicdyn/pcf.hpp"

#include "monicdyn/gcd.hpp"
#include "monicdyn/resultant.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace monicdyn {

namespace {

Rational pow_int(int base, int e) {
  Integer r = 1;
  for (int i = 0; i < e; ++i)
    r *= base;
  return Rational(r);
}

// Least common multiple of squarefree forms.
Form form_lcm(const Form &a, const Form &b) {
  const Form g = form_gcd(a, b);
  return a * exact_quotient(b, g);
}

Certificate run(const PolyMap &f, const Budgets &budgets, bool orbit_test, bool escape_test) {
  Certificate c;
  if (budgets.max_steps <= 0)
    return c;
  const mpfr_prec_t prec = budgets.precision;
  const Divisor C = critical_divisor(f);
  DivisorOrbit orbit(f, C);
  const int d = f.d();

  struct Local {
    unsigned long p;
    Rational B;
    bool zero = false;
  };
  std::vector<Local> primes;
  for (const Place &v : relevant_places(f, &C))
    if (!v.is_arch())
      primes.push_back({v.p, coeff_height_nonarch(f, v.p)});
  const Interval T = arch_threshold(f, prec);
  const Interval K = arch_green_error(d, prec);

  Form acc;
  for (int n = 0; n < budgets.max_steps; ++n) {
    const Divisor &R = orbit.radical(n);
    c.radicals.push_back(R);
    if (orbit_test) {
      if (n > 0 && divides(R.form(), acc)) {
        c.verdict = Verdict::PcfProven;
        c.step = n;
        return c;
      }
      acc = n == 0 ? R.form() : form_lcm(acc, R.form());
    }
    if (!escape_test)
      continue;
    const Rational scale = pow_int(d, n);
    for (auto &L : primes) {
      if (L.zero)
        continue;
      const Rational lambda = lambda_nonarch(R, L.p);
      if (lambda > L.B) {
        c.verdict = Verdict::NotPcfProven;
        c.step = n;
        c.place = Place::prime(L.p);
        c.witness = LogValue::nonarch(L.p, lambda / scale, prec);
        return c;
      }
      if (L.B == 0 && lambda == 0)
        L.zero = true;
    }
    const Interval lambda = lambda_arch_bounds(R, prec);
    if (lambda.certainly_greater(T)) {
      Interval value = (span(lambda - K, lambda + K) / scale).clamp_nonneg();
      if (value.is_positive()) {
        c.verdict = Verdict::NotPcfProven;
        c.step = n;
        c.place = Place::infinity();
        c.witness = LogValue::arch(std::move(value));
        return c;
      }
    }
  }
  c.step = budgets.max_steps;
  return c;
}

} // namespace

OrbitRecord orbit_certify(DivisorOrbit &orbit, int max_steps) {
  OrbitRecord rec;
  rec.m = max_steps;
  Form acc;
  for (int n = 0; n < max_steps; ++n) {
    const Divisor &R = orbit.radical(n);
    rec.steps.push_back({n, R, R.degree()});
    if (n > 0 && divides(R.form(), acc)) {
      rec.status = OrbitStatus::PreperiodicProvenAt;
      rec.m = n;
      return rec;
    }
    acc = n == 0 ? R.form() : form_lcm(acc, R.form());
  }
  return rec;
}

OrbitRecord orbit_certify(const PolyMap &f, const Divisor &D, int max_steps) {
  DivisorOrbit orbit(f, D);
  return orbit_certify(orbit, max_steps);
}

std::string to_string(Verdict v) {
  switch (v) {
  case Verdict::PcfProven:
    return "PCF_PROVEN";
  case Verdict::NotPcfProven:
    return "NOT_PCF_PROVEN";
  case Verdict::Unknown:
    break;
  }
  return "UNKNOWN";
}

Certificate nonpcf_certify(const PolyMap &f, const Budgets &budgets) { return run(f, budgets, false, true); }

Certificate classify(const PolyMap &f, const Budgets &budgets) { return run(f, budgets, true, true); }

bool verify_witness(const PolyMap &f, const Certificate &c, mpfr_prec_t prec) {
  if (c.verdict != Verdict::NotPcfProven || !c.place || !c.witness)
    return false;
  DivisorOrbit orbit(f, critical_divisor(f));
  const Divisor &R = orbit.radical(c.step);
  const Rational scale = pow_int(f.d(), c.step);
  if (!c.place->is_arch()) {
    const unsigned long p = c.place->p;
    const Rational lambda = lambda_nonarch(R, p);
    return lambda > coeff_height_nonarch(f, p) && c.witness->exact == lambda / scale && lambda > 0;
  }
  const Interval lambda = lambda_arch_bounds(R, prec);
  if (!lambda.certainly_greater(arch_threshold(f, prec)))
    return false;
  const Interval K = arch_green_error(f.d(), prec);
  const Interval value = (span(lambda - K, lambda + K) / scale).clamp_nonneg();
  return value.is_positive() && value.overlaps(c.witness->approx);
}

// ---------------------------------------------------------------------------
// Portraits

namespace {

Form normalized(const Form &f) { return normalize_divisor(f).form(); }

// Rational r with x_i - r x_N dividing F.
std::vector<Rational> linear_factor_candidates(const Form &F, int i) {
  const int N = F.nvars() - 1;
  std::vector<Rational> g(F.degree() + 1);
  bool nonzero = false;
  for (const auto &[m, c] : F.terms()) {
    bool others_zero = true;
    for (int j = 0; j < N; ++j)
      if (j != i && m[j] != 0)
        others_zero = false;
    if (others_zero) {
      g[m[i]] += c;
      nonzero = true;
    }
  }
  if (!nonzero)
    return {};
  return rational_roots(g);
}

std::vector<Form> split(Form work) {
  const int n = work.nvars();
  const int N = n - 1;
  std::vector<Form> out;
  for (int i = 0; i < N; ++i) {
    const Form xi = Form::of(Poly::variable(n, i));
    if (work.degree() > 1 && divides(xi, work)) {
      out.push_back(xi);
      work = exact_quotient(work, xi);
    }
  }
  for (int i = 0; i < N && work.degree() > 1; ++i) {
    for (const Rational &r : linear_factor_candidates(work, i)) {
      const Form L = Form::of(Poly::variable(n, i) - Poly::variable(n, N) * r);
      if (work.degree() > 1 && divides(L, work)) {
        out.push_back(normalized(L));
        work = exact_quotient(work, L);
      }
    }
  }
  if (work.degree() > 0)
    out.push_back(normalized(work));
  return out;
}

// Refines `basis` to pairwise coprime forms whose product has the same support.
void refine(std::vector<Form> &basis) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < basis.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < basis.size() && !changed; ++j) {
        const Form g = form_gcd(basis[i], basis[j]);
        if (g.degree() == 0)
          continue;
        changed = true;
        const Form a = exact_quotient(basis[i], g);
        const Form b = exact_quotient(basis[j], g);
        basis[i] = normalized(g);
        std::vector<Form> rest;
        if (a.degree() > 0)
          rest.push_back(normalized(a));
        if (b.degree() > 0)
          rest.push_back(normalized(b));
        basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(j));
        basis.insert(basis.begin() + static_cast<std::ptrdiff_t>(i) + 1, rest.begin(), rest.end());
      }
  }
}

} // namespace

Portrait portrait(const PolyMap &f, const std::vector<Divisor> &radicals) {
  std::vector<Form> basis;
  for (std::size_t k = 0; k < radicals.size(); ++k) {
    for (const Form &piece : split(radicals[k].form())) {
      bool known = false;
      for (const Form &b : basis)
        known = known || b == piece;
      if (!known)
        basis.push_back(piece);
    }
    refine(basis);
  }

  Portrait P;
  for (const Form &b : basis) {
    Component comp{normalize_divisor(b), {}};
    const Form image = squarefree_radical(pushforward(f, comp.divisor).form());
    for (std::size_t q = 0; q < basis.size(); ++q)
      if (form_gcd(image, basis[q]).degree() > 0)
        comp.image.push_back(static_cast<int>(q));
    P.components.push_back(std::move(comp));
  }
  for (std::size_t s = 0; s < basis.size(); ++s) {
    if (radicals.empty() || !divides(basis[s], radicals.front().form()))
      continue;
    std::vector<int> chain{static_cast<int>(s)};
    std::set<int> seen{static_cast<int>(s)};
    while (P.components[chain.back()].image.size() == 1) {
      const int next = P.components[chain.back()].image.front();
      chain.push_back(next);
      if (!seen.insert(next).second)
        break;
    }
    P.chains.push_back(std::move(chain));
  }
  return P;
}

// ---------------------------------------------------------------------------
// Conjugacy in the quadratic family

namespace {

std::vector<Integer> divisors_of(Integer n) {
  n = abs(n);
  std::vector<std::pair<Integer, int>> fac;
  for (Integer p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e)
      fac.push_back({p, e});
  }
  if (n > 1)
    fac.push_back({n, 1});
  std::vector<Integer> out{1};
  for (const auto &[p, e] : fac) {
    const std::size_t size = out.size();
    Integer pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < size; ++i)
        out.push_back(out[i] * pk);
    }
  }
  return out;
}

Rational horner(const std::vector<Rational> &c, const Rational &t) {
  Rational r = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it)
    r = r * t + *it;
  return r;
}

using Univariate = std::vector<Rational>;

Univariate mul(const Univariate &a, const Univariate &b) {
  Univariate r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] += a[i] * b[j];
  return r;
}

Univariate add(Univariate a, const Univariate &b) {
  a.resize(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < b.size(); ++i)
    a[i] += b[i];
  return a;
}

Univariate scale(Univariate a, const Rational &c) {
  for (auto &x : a)
    x *= c;
  return a;
}

} // namespace

std::vector<Rational> rational_roots(const std::vector<Rational> &coeffs) {
  std::vector<Rational> c = coeffs;
  while (!c.empty() && c.back() == 0)
    c.pop_back();
  if (c.size() <= 1)
    return {};
  std::set<Rational> roots;
  std::size_t low = 0;
  while (c[low] == 0)
    ++low;
  if (low > 0)
    roots.insert(Rational(0));
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(low));
  if (c.size() > 1) {
    Integer den = 1;
    for (const auto &x : c)
      den = lcm(den, Integer(x.get_den()));
    std::vector<Integer> z;
    for (const auto &x : c)
      z.push_back(Integer(x * den));
    for (const Integer &p : divisors_of(z.front()))
      for (const Integer &q : divisors_of(z.back()))
        for (int sign : {1, -1}) {
          Rational t(Integer(p * sign), q);
          t.canonicalize();
          if (horner(c, t) == 0)
            roots.insert(t);
        }
  }
  return {roots.begin(), roots.end()};
}

std::vector<std::array<Rational, 2>> rational_fixed_points(const Quad &t) {
  const Rational a(t[0]), b(t[1]), c(t[2]), d(t[3]);
  // x = x^2 + a x + b y and y = y^2 + c x + d y.
  const Univariate s{0, a - 1, 1};
  Univariate eliminant;
  if (b != 0) {
    // b^2 Res_y: substitute y = -s(x) / b into y^2 + (d - 1) y + c x.
    eliminant = add(add(mul(s, s), scale(s, -(d - 1) * b)), Univariate{0, c * b * b});
  } else {
    eliminant = s;
  }
  std::vector<std::array<Rational, 2>> out;
  for (const Rational &u : rational_roots(eliminant)) {
    if (b != 0) {
      out.push_back({u, -horner(s, u) / b});
      continue;
    }
    for (const Rational &v : rational_roots({c * u, d - 1, 1}))
      out.push_back({u, v});
  }
  std::sort(out.begin(), out.end());
  return out;
}

Quad translate(const Quad &t, const std::array<Rational, 2> &p) {
  const Rational a = t[0] + 2 * p[0];
  const Rational d = t[3] + 2 * p[1];
  if (a.get_den() != 1 || d.get_den() != 1 || !a.get_num().fits_slong_p() || !d.get_num().fits_slong_p())
    throw std::domain_error("translate: conjugate leaves the integer family");
  return {a.get_num().get_si(), t[1], t[2], d.get_num().get_si()};
}

Quad swap(const Quad &t) { return {t[3], t[2], t[1], t[0]}; }

std::vector<Quad> conjugacy_orbit(const Quad &t) {
  std::set<Quad> seen{t};
  std::deque<Quad> todo{t};
  while (!todo.empty()) {
    const Quad cur = todo.front();
    todo.pop_front();
    std::vector<Quad> next{swap(cur)};
    for (const auto &p : rational_fixed_points(cur))
      next.push_back(translate(cur, p));
    for (const Quad &q : next)
      if (seen.insert(q).second)
        todo.push_back(q);
  }
  return {seen.begin(), seen.end()};
}

Quad canonical_representative(const std::vector<Quad> &orbit) {
  auto l1 = [](const Quad &q) {
    long s = 0;
    for (long x : q)
      s += std::labs(x);
    return s;
  };
  return *std::min_element(orbit.begin(), orbit.end(), [&](const Quad &x, const Quad &y) {
    const long lx = l1(x), ly = l1(y);
    return lx != ly ? lx < ly : x > y;
  });
}

std::vector<ConjugacyClass> conjugacy_dedupe(const std::vector<Quad> &tuples) {
  std::map<Quad, Quad> rep_of;
  std::map<Quad, ConjugacyClass> classes;
  for (const Quad &t : tuples) {
    auto it = rep_of.find(t);
    if (it == rep_of.end()) {
      const auto orbit = conjugacy_orbit(t);
      const Quad rep = canonical_representative(orbit);
      for (const Quad &q : orbit)
        rep_of[q] = rep;
      it = rep_of.find(t);
    }
    auto &cls = classes[it->second];
    cls.representative = it->second;
    cls.members.push_back(t);
  }
  std::vector<ConjugacyClass> out;
  for (auto &[rep, cls] : classes) {
    std::sort(cls.members.begin(), cls.members.end());
    cls.members.erase(std::unique(cls.members.begin(), cls.members.end()), cls.members.end());
    cls.irrational_fixed_points_only = rational_fixed_points(rep).size() == 1;
    out.push_back(std::move(cls));
  }
  return out;
}

SearchBound derive_search_bound(int N, int d, mpfr_prec_t prec) {
  if (N != 2 || d != 2)
    throw UnsupportedFamily("derive_search_bound: only the quadratic family on P^2 is supported");
  const Interval log2 = Interval::log_of(Rational(2), prec);
  const Interval root2 = Interval::point(Rational(2), prec).sqrt();
  const Interval root3 = Interval::point(Rational(3), prec).sqrt();
  const Interval one = Interval::point(Rational(1), prec);
  const Interval two = Interval::point(Rational(2), prec);
  const Interval log1p3 = (one + root3).log();
  Interval first = log2 * Rational(4) + log1p3 * Rational(2);
  Interval second = log2 * Rational(3, 2) + log1p3 - (two - root2).log() * Rational(1, 2);
  const Interval e = max(first, second).exp();
  const long lo = mpfr_get_si(e.lo(), MPFR_RNDD);
  const long hi = mpfr_get_si(e.hi(), MPFR_RNDD);
  if (lo != hi)
    throw std::runtime_error("derive_search_bound: precision too low to fix the integer part");
  return {lo, std::move(first), std::move(second)};
}

Integer tuple_count(long box) {
  const Integer all = 2 * box + 1;
  const Integer even = 2 * (box / 2) + 1;
  return even * even * all * all;
}

std::string to_string(const Quad &t) {
  return std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + "," + std::to_string(t[3]);
}

} // namespace monicdyn
