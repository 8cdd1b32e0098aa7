#include "monicdyn/heights.hpp"

#include "monicdyn/gcd.hpp"
#include "monicdyn/resultant.hpp"

#include <algorithm>
#include <set>

namespace monicdyn {

Place Place::prime(unsigned long p) {
  if (!is_prime(p))
    throw std::invalid_argument("Place: " + std::to_string(p) + " is not prime");
  return Place{p};
}

std::string Place::to_string() const { return is_arch() ? "inf" : std::to_string(p); }

Place Place::parse(const std::string &text) {
  if (text == "inf")
    return infinity();
  std::size_t used = 0;
  unsigned long p = 0;
  try {
    p = std::stoul(text, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used != text.size() || used == 0)
    throw ParseError("Place: expected 'inf' or a prime, got '" + text + "'");
  return prime(p);
}

LogValue LogValue::nonarch(unsigned long p, const Rational &r, mpfr_prec_t prec) {
  return LogValue{Place::prime(p), r, Interval::log_of(Rational(p), prec) * r};
}

LogValue LogValue::arch(Interval value) { return LogValue{Place::infinity(), Rational(0), std::move(value)}; }

namespace {

// log+ max |c|_p^{1/w} over (c, w) with w >= 1, in units of log p.
template <class Terms> Rational weighted_nonarch(const Terms &terms, unsigned long p) {
  Rational best = 0;
  for (const auto &[c, w] : terms) {
    if (c == 0 || w < 1)
      continue;
    Rational q(-valuation(c, p), w);
    q.canonicalize();
    best = std::max(best, q);
  }
  return best;
}

template <class Terms> Interval weighted_arch(const Terms &terms, mpfr_prec_t prec) {
  Interval best(prec);
  for (const auto &[c, w] : terms) {
    if (c == 0 || w < 1)
      continue;
    best = max(best, Interval::log_of(abs(c), prec) / Rational(w));
  }
  return best;
}

std::vector<std::pair<Rational, int>> divisor_terms(const Divisor &D) {
  std::vector<std::pair<Rational, int>> out;
  for (const auto &[m, c] : D.form().terms())
    out.emplace_back(c, m.last());
  return out;
}

std::vector<std::pair<Rational, int>> map_terms(const PolyMap &f) {
  std::vector<std::pair<Rational, int>> out;
  for (int i = 0; i < f.N(); ++i)
    for (std::size_t k = 0; k < f.indices().size(); ++k)
      out.emplace_back(f.coeff(i, k), f.indices()[k].last());
  return out;
}

Rational pow_int(int base, int e) {
  Rational r = 1;
  for (int k = 0; k < e; ++k)
    r *= base;
  return r;
}

} // namespace

Rational gauss_norm(const Form &c, unsigned long p) {
  if (c.is_zero())
    throw ZeroForm("gauss_norm: zero form");
  int best = std::numeric_limits<int>::max();
  for (const auto &[m, v] : c.terms())
    best = std::min(best, valuation(v, p));
  return Rational(-best);
}

Rational lambda_nonarch(const Divisor &D, unsigned long p) { return weighted_nonarch(divisor_terms(D), p); }

Interval lambda_arch_bounds(const Divisor &D, mpfr_prec_t prec) {
  const Interval L = weighted_arch(divisor_terms(D), prec);
  const Interval log_deg = Interval::log_of(Rational(D.degree()), prec);
  return span(L - log_deg - Interval::point(1, prec), L + log_deg).clamp_nonneg();
}

bool good_reduction_at(const PolyMap &f, unsigned long p) {
  for (const auto &[c, w] : map_terms(f))
    if (!is_p_integral(c, p))
      return false;
  return true;
}

Rational coeff_height_nonarch(const PolyMap &f, unsigned long p) { return weighted_nonarch(map_terms(f), p); }

Interval coeff_height_arch(const PolyMap &f, mpfr_prec_t prec) { return weighted_arch(map_terms(f), prec); }

LogValue coeff_height(const PolyMap &f, Place v, mpfr_prec_t prec) {
  if (v.is_arch())
    return LogValue::arch(coeff_height_arch(f, prec));
  return LogValue::nonarch(v.p, coeff_height_nonarch(f, v.p), prec);
}

Interval arch_threshold(const PolyMap &f, mpfr_prec_t prec) {
  return coeff_height_arch(f, prec) + Interval::log_of(Rational(2 * f.dimension(), f.N()), prec);
}

Interval arch_green_error(int d, mpfr_prec_t prec) {
  const Interval root = (-(Interval::log_of(2, prec) / Rational(d))).exp();
  return -((Interval::point(1, prec) - root).log()) / Rational(d - 1);
}

DivisorOrbit::DivisorOrbit(PolyMap f, const Divisor &D) : f_(std::move(f)) {
  radicals_.push_back(normalize_divisor(squarefree_radical(D.form())));
}

const Divisor &DivisorOrbit::radical(int n) {
  while (computed() <= n) {
    const Divisor next = pushforward(f_, radicals_.back());
    radicals_.push_back(normalize_divisor(squarefree_radical(next.form())));
  }
  return radicals_[n];
}

std::string to_string(GreenKind k) {
  switch (k) {
  case GreenKind::Exact:
    return "exact";
  case GreenKind::Bounded:
    return "interval";
  case GreenKind::ProvenPositive:
    return "positive";
  case GreenKind::Unresolved:
    return "unresolved";
  }
  return "?";
}

GreenResult green_nonarch(DivisorOrbit &orbit, unsigned long p, int max_iter, mpfr_prec_t prec) {
  const PolyMap &f = orbit.map();
  const Rational B = coeff_height_nonarch(f, p);
  const int d = f.d();
  const Interval logp = Interval::log_of(Rational(p), prec);
  GreenResult r{Place::prime(p), GreenKind::Unresolved, 0, Rational(0), Interval(prec)};
  std::optional<Rational> upper;
  for (int n = 0; n <= max_iter; ++n) {
    const Rational lambda = lambda_nonarch(orbit.radical(n), p);
    const Rational scale = pow_int(d, n);
    r.step = n;
    if (lambda > B || (B == 0 && lambda == 0)) {
      // Escape fixes G exactly; with B = 0 and lambda = 0 the orbit can
      // never leave lambda = 0.
      r.kind = GreenKind::Exact;
      r.exact = lambda / scale;
      r.value = logp * r.exact;
      return r;
    }
    const Rational bound = std::max(B, lambda) / scale;
    if (!upper || bound < *upper)
      upper = bound;
  }
  r.exact = upper.value_or(B);
  r.value = span(Interval(prec), logp * r.exact);
  return r;
}

GreenResult green_nonarch(const PolyMap &f, const Divisor &D, unsigned long p, int max_iter, mpfr_prec_t prec) {
  DivisorOrbit orbit(f, D);
  return green_nonarch(orbit, p, max_iter, prec);
}

GreenResult green_arch_bounds(DivisorOrbit &orbit, int max_iter, mpfr_prec_t prec) {
  const PolyMap &f = orbit.map();
  const int d = f.d();
  const Interval T = arch_threshold(f, prec);
  const Interval K = arch_green_error(d, prec);
  GreenResult r{Place::infinity(), GreenKind::Unresolved, 0, Rational(0), Interval(prec)};
  std::optional<Interval> upper;
  for (int n = 0; n <= max_iter; ++n) {
    const Interval lambda = lambda_arch_bounds(orbit.radical(n), prec);
    const Rational scale = pow_int(d, n);
    r.step = n;
    if (lambda.certainly_greater(T)) {
      r.value = (span(lambda - K, lambda + K) / scale).clamp_nonneg();
      r.kind = r.value.is_positive() ? GreenKind::ProvenPositive : GreenKind::Bounded;
      return r;
    }
    // G <= d^{-n} (max(lambda_n, T) + K) whatever happens later.
    const Interval bound = (max(lambda, T) + K) / scale;
    if (!upper || mpfr_less_p(bound.hi(), upper->hi()))
      upper = bound;
  }
  r.value = span(Interval(prec), *upper);
  return r;
}

GreenResult green_arch_bounds(const PolyMap &f, const Divisor &D, int max_iter, mpfr_prec_t prec) {
  DivisorOrbit orbit(f, D);
  return green_arch_bounds(orbit, max_iter, prec);
}

GreenResult green(DivisorOrbit &orbit, Place v, int max_iter, mpfr_prec_t prec) {
  return v.is_arch() ? green_arch_bounds(orbit, max_iter, prec) : green_nonarch(orbit, v.p, max_iter, prec);
}

std::vector<unsigned long> prime_factors(Integer n) {
  n = abs(n);
  std::vector<unsigned long> out;
  for (unsigned long q = 2; n > 1; ++q) {
    if (Integer(q) * q > n) {
      if (!n.fits_ulong_p())
        throw std::overflow_error("prime_factors: factor exceeds machine word");
      out.push_back(n.get_ui());
      break;
    }
    if (mpz_divisible_ui_p(n.get_mpz_t(), q)) {
      out.push_back(q);
      while (mpz_divisible_ui_p(n.get_mpz_t(), q))
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), q);
    }
  }
  return out;
}

std::vector<Place> relevant_places(const PolyMap &f, const Divisor *D) {
  std::set<unsigned long> primes;
  for (unsigned long q = 2; q <= static_cast<unsigned long>(f.d()); ++q)
    if (is_prime(q))
      primes.insert(q);
  auto add_den = [&](const Rational &c) {
    for (auto q : prime_factors(c.get_den()))
      primes.insert(q);
  };
  for (const auto &[c, w] : map_terms(f))
    add_den(c);
  if (D)
    for (const auto &[m, c] : D->form().terms())
      add_den(c);
  std::vector<Place> out{Place::infinity()};
  for (auto q : primes)
    out.push_back(Place{q});
  return out;
}

Interval weil_height(const PolyMap &f, mpfr_prec_t prec) {
  Interval total(prec);
  for (const Place v : relevant_places(f))
    total = total + coeff_height(f, v, prec).approx;
  return total;
}

Interval canonical_height_interval(const PolyMap &f, const Divisor &D, int max_iter, mpfr_prec_t prec) {
  DivisorOrbit orbit(f, D);
  Interval total(prec);
  for (const Place v : relevant_places(f, &D))
    total = total + green(orbit, v, max_iter, prec).value;
  return total;
}

Interval crit_height_interval(const PolyMap &f, int max_iter, mpfr_prec_t prec) {
  return canonical_height_interval(f, critical_divisor(f), max_iter, prec);
}

HeightReport height_report(const PolyMap &f, int max_iter, mpfr_prec_t prec) {
  const Divisor C = critical_divisor(f);
  DivisorOrbit orbit(f, C);
  HeightReport report{{}, Interval(prec), Interval(prec)};
  for (const Place v : relevant_places(f, &C)) {
    PlaceReport pr{v, coeff_height(f, v, prec), green(orbit, v, max_iter, prec)};
    report.weil = report.weil + pr.B.approx;
    report.crit = report.crit + pr.lambda_crit.value;
    report.places.push_back(std::move(pr));
  }
  return report;
}

} // namespace monicdyn
