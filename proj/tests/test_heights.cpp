#include "monicdyn/heights.hpp"
#include "monicdyn/resultant.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace monicdyn;
using monicdyn::testing::form3;

namespace {

Divisor div3(const char *text) { return normalize_divisor(form3(text)); }

// {prod (x - r_i z)} on P^1: the roots z = x / r_i give lambda_v = log+ max |r_i|_v.
Divisor planted_line_divisor(const std::vector<Rational> &roots) {
  Poly p = Poly::constant(2, 1);
  for (const auto &r : roots) {
    Poly l = parse_poly("x", 2);
    l.add_term({0, 1}, -r);
    p = p * l;
  }
  return normalize_divisor(Form::of(p));
}

Rational planted_nonarch(const std::vector<Rational> &roots, unsigned long p) {
  Rational best = 0;
  for (const auto &r : roots)
    if (r != 0)
      best = std::max(best, Rational(-valuation(r, p)));
  return best;
}

double planted_arch(const std::vector<Rational> &roots) {
  double best = 0;
  for (const auto &r : roots)
    best = std::max(best, std::log(std::abs(r.get_d())));
  return best;
}

// Containment of a double-precision reference value, allowing for its rounding.
bool encloses(const Interval &i, double x) { return i.lo_double() <= x + 1e-12 && x - 1e-12 <= i.hi_double(); }

} // namespace

TEST_CASE("places") {
  CHECK(Place::parse("inf").is_arch());
  CHECK(Place::parse("7").p == 7);
  CHECK_THROWS_AS(Place::parse("8"), std::invalid_argument);
  CHECK_THROWS_AS(Place::parse("x"), ParseError);
  CHECK(prime_factors(Integer(360)) == std::vector<unsigned long>{2, 3, 5});
  CHECK(prime_factors(Integer(1)).empty());
}

TEST_CASE("gauss norm") {
  CHECK(gauss_norm(form3("3/4*x"), 2) == 2);
  CHECK(gauss_norm(form3("6*x*y"), 3) == -1);
  CHECK(gauss_norm(form3("x + y"), 5) == 0);
  CHECK_THROWS_AS(gauss_norm(Form(3, 1), 2), ZeroForm);
}

TEST_CASE("non-archimedean lambda") {
  CHECK(lambda_nonarch(div3("y - 3/2*z"), 2) == 1);
  CHECK(lambda_nonarch(div3("y - 2*z"), 2) == 0);
  CHECK(lambda_nonarch(div3("y^2 - 1/3*x*z"), 3) == 1);
  CHECK(lambda_nonarch(div3("x*y - 1/8*z^2"), 2) == Rational(3, 2));

  std::mt19937 rng(21);
  std::uniform_int_distribution<int> num(-40, 40), den_pow(0, 4);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Rational> roots;
    for (int k = 0; k < 1 + trial % 3; ++k) {
      Rational r(num(rng), 1 << den_pow(rng));
      r.canonicalize();
      roots.push_back(r == 0 ? Rational(1, 3) : r);
    }
    const Divisor D = planted_line_divisor(roots);
    for (unsigned long p : {2UL, 3UL, 5UL})
      CHECK(lambda_nonarch(D, p) == planted_nonarch(roots, p));
    // Linearity: the sum takes the max.
    const Divisor E = planted_line_divisor({Rational(1, 9)});
    CHECK(lambda_nonarch(D + E, 3) == std::max(lambda_nonarch(D, 3), lambda_nonarch(E, 3)));
  }
}

TEST_CASE("archimedean lambda bounds") {
  const Interval line = lambda_arch_bounds(div3("y - 3*z"));
  CHECK(encloses(line, std::log(3.0)));
  CHECK(line.lo_double() == doctest::Approx(std::log(3.0) - 1).epsilon(1e-12));
  CHECK(line.hi_double() == doctest::Approx(std::log(3.0)).epsilon(1e-12));

  const Interval conic = lambda_arch_bounds(div3("y^2 - 4*x*z"));
  CHECK(encloses(conic, std::log(4.0)));
  CHECK(conic.lo_double() == 0);
  CHECK(conic.hi_double() == doctest::Approx(std::log(8.0)).epsilon(1e-12));

  const Interval chebyshev = lambda_arch_bounds(div3("x*y - z^2"));
  CHECK(chebyshev.contains(0.0));
  CHECK(chebyshev.hi_double() == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  // Conics {y^2 - w x z}: on the torus |z|^{-1} = |w|.
  for (int w : {-30, -7, -2, 1, 3, 11, 250}) {
    Poly p = parse_poly("y^2", 3);
    p.add_term({1, 0, 1}, -w);
    const Interval b = lambda_arch_bounds(normalize_divisor(Form(p, 2)));
    CHECK(encloses(b, std::log(std::abs(static_cast<double>(w)))));
  }
  std::mt19937 rng(22);
  std::uniform_int_distribution<int> num(-300, 300);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rational> roots;
    for (int k = 0; k < 1 + trial % 4; ++k) {
      const int v = num(rng);
      roots.emplace_back(v == 0 ? 5 : v);
    }
    CHECK(encloses(lambda_arch_bounds(planted_line_divisor(roots)), planted_arch(roots)));
  }
}

TEST_CASE("coefficient heights and good reduction") {
  const PolyMap power(2, 2);
  CHECK(coeff_height_nonarch(power, 2) == 0);
  CHECK(coeff_height_arch(power).hi_double() == 0);
  CHECK(good_reduction_at(power, 2));

  const PolyMap f = PolyMap::quadratic(0, 0, -2, 0);
  CHECK(encloses(coeff_height_arch(f), std::log(2.0)));
  CHECK(coeff_height_arch(f).width() < 1e-30);
  CHECK(coeff_height_nonarch(f, 2) == 0);
  CHECK(coeff_height_nonarch(f, 3) == 0);
  CHECK(good_reduction_at(f, 3));

  const PolyMap g = PolyMap::quadratic(0, Rational(1, 2), 0, 0);
  CHECK(coeff_height_nonarch(g, 2) == 1);
  CHECK_FALSE(good_reduction_at(g, 2));
  CHECK(encloses(coeff_height(g, Place::prime(2)).approx, std::log(2.0)));

  // Weight I_N = 1 for every quadratic-family slot; higher weights divide.
  PolyMap h(1, 3);
  h.set_coeff(0, MultiIndex{1, 2}, Rational(1, 9));
  CHECK(coeff_height_nonarch(h, 3) == 1);
}

TEST_CASE("green functions, non-archimedean") {
  const GreenResult r = green_nonarch(PolyMap(2, 2), div3("y - 1/2*z"), 2, 8);
  CHECK(r.kind == GreenKind::Exact);
  CHECK(r.exact == 1);
  CHECK(r.step == 0);

  const PolyMap pcf = PolyMap::quadratic(0, 0, 0, -2);
  const GreenResult z = green_nonarch(pcf, critical_divisor(pcf), 2, 8);
  CHECK(z.kind == GreenKind::Exact);
  CHECK(z.exact == 0);

  const PolyMap skew = PolyMap::quadratic(0, 0, 1, 0);
  const GreenResult good = green_nonarch(skew, critical_divisor(skew), 5, 8);
  CHECK(good.kind == GreenKind::Exact);
  CHECK(good.exact == 0);

  // Escape after one step: B_2 = 1, lambda_2(C_f) = 1 is not above it.
  const PolyMap half = PolyMap::quadratic(0, Rational(1, 2), 0, 0);
  const GreenResult esc = green_nonarch(half, critical_divisor(half), 2, 8);
  CHECK(esc.kind == GreenKind::Exact);
  CHECK(esc.exact > 0);
}

TEST_CASE("green functions, archimedean") {
  const PolyMap skew = PolyMap::quadratic(0, 0, 1, 0);
  const GreenResult r = green_arch_bounds(skew, critical_divisor(skew), 8);
  CHECK(r.kind == GreenKind::ProvenPositive);
  CHECK(r.step <= 5);

  const GreenResult p = green_arch_bounds(PolyMap(2, 2), div3("y - 4*z"), 8);
  CHECK(p.kind == GreenKind::ProvenPositive);
  CHECK(encloses(p.value, std::log(4.0)));

  const PolyMap power(2, 2);
  const GreenResult u = green_arch_bounds(power, critical_divisor(power), 8);
  CHECK(u.kind == GreenKind::Unresolved);
  CHECK(u.value.contains_zero());
}

TEST_CASE("global heights") {
  const PolyMap power(2, 2);
  CHECK(weil_height(power).hi_double() == 0);
  const Interval hc = crit_height_interval(power, 8);
  CHECK(hc.contains_zero());
  CHECK(hc.hi_double() < 0.02);

  const Interval w = weil_height(PolyMap::quadratic(0, 0, -2, 0));
  CHECK(encloses(w, std::log(2.0)));
  CHECK(w.width() < 1e-30);

  const Interval can = canonical_height_interval(power, div3("y - 1/2*z"), 10);
  CHECK(encloses(can, std::log(2.0)));
  CHECK(can.width() < 0.01);

  const HeightReport rep = height_report(PolyMap::quadratic(0, Rational(1, 3), 0, 0), 4);
  REQUIRE(rep.places.size() == 3);
  CHECK(rep.places[0].place.is_arch());
  CHECK(rep.places[1].place.p == 2);
  CHECK(rep.places[2].place.p == 3);
  CHECK(rep.places[2].B.exact == 1);
}

TEST_CASE("transformation law with planted denominators") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> num(-9, 9), e(1, 3);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const unsigned long p = trial % 2 ? 3 : 2;
    const PolyMap f = testing::random_quadratic(rng, 5);
    Poly form = parse_poly("x*y", 3);
    int denom = 1;
    for (int k = 0; k < e(rng); ++k)
      denom *= static_cast<int>(p);
    Rational c1(num(rng), denom), c2(num(rng), 1), c3(num(rng), 1);
    c1.canonicalize();
    form.add_term({1, 0, 1}, c1);
    form.add_term({0, 1, 1}, c2);
    form.add_term({0, 0, 2}, c3);
    const Divisor D = normalize_divisor(Form(form, 2));
    const Rational lambda = lambda_nonarch(D, p);
    if (lambda <= coeff_height_nonarch(f, p))
      continue;
    ++checked;
    CHECK(lambda_nonarch(pushforward(f, D), p) == 2 * lambda);
  }
  CHECK(checked > 10);
}

TEST_CASE("good-place equality") {
  std::mt19937 rng(24);
  std::uniform_int_distribution<int> num(-9, 9);
  for (int trial = 0; trial < 20; ++trial) {
    const unsigned long p = trial % 2 ? 3 : 5;
    std::array<Rational, 4> q;
    for (auto &v : q) {
      v = Rational(num(rng), trial % 3 == 0 ? 1 : static_cast<int>(p));
      v.canonicalize();
    }
    const PolyMap f = PolyMap::quadratic(q[0], q[1], q[2], q[3]);
    CHECK(lambda_nonarch(pushforward(f, critical_divisor(f)), p) == 2 * coeff_height_nonarch(f, p));
  }
}

TEST_CASE("raising the budget never widens") {
  std::mt19937 rng(25);
  for (int trial = 0; trial < 6; ++trial) {
    const PolyMap f = testing::random_quadratic(rng, 3);
    const Divisor C = critical_divisor(f);
    for (Place v : {Place::infinity(), Place::prime(2)}) {
      DivisorOrbit orbit(f, C);
      GreenResult prev = green(orbit, v, 0);
      for (int k = 1; k <= 3; ++k) {
        const GreenResult next = green(orbit, v, k);
        CHECK(prev.value.contains(next.value));
        prev = next;
      }
    }
  }
}
