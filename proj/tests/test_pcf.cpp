#include "monicdyn/gcd.hpp"
#include "monicdyn/pcf.hpp"
#include "monicdyn/resultant.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace monicdyn;
using monicdyn::testing::form3;

namespace {

Form nf(const char *text) { return normalize_divisor(form3(text)).form(); }

PolyMap quad(const Quad &t) { return PolyMap::quadratic(t[0], t[1], t[2], t[3]); }

std::vector<Form> radicals_of(const OrbitRecord &rec) {
  std::vector<Form> out;
  for (const auto &s : rec.steps)
    out.push_back(s.radical.form());
  return out;
}

std::set<std::string> component_strings(const Portrait &P) {
  std::set<std::string> out;
  for (const auto &c : P.components)
    out.insert(c.divisor.form().to_string());
  return out;
}

std::vector<std::string> chain_strings(const Portrait &P) {
  std::vector<std::string> out;
  for (const auto &chain : P.chains) {
    std::string s;
    for (int k : chain)
      s += (s.empty() ? "" : " -> ") + P.components[k].divisor.form().to_string();
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// phi^{-1} o f o phi for phi(x, y) = (x + u, y + v), computed by substitution.
PolyMap conjugate_by_translation(const PolyMap &f, const Rational &u, const Rational &v) {
  const Poly x = Poly::variable(3, 0), y = Poly::variable(3, 1), z = Poly::variable(3, 2);
  const Poly shift[2] = {x + z * u, y + z * v};
  PolyMap g(2, 2);
  for (int i = 0; i < 2; ++i) {
    Poly c = f.component(i).poly();
    c = c.substitute(0, shift[0]).substitute(1, shift[1]);
    c = c - (i == 0 ? z * u : z * v) * z;
    for (const auto &I : g.indices()) {
      Poly m = Poly::monomial(I);
      g.set_coeff(i, I, c.coeff(I));
      c = c - m * c.coeff(I);
    }
    const MultiIndex sq = i == 0 ? MultiIndex{2, 0, 0} : MultiIndex{0, 2, 0};
    CHECK(c == Poly::monomial(sq));
  }
  return g;
}

const std::vector<Quad> kSix = {
    {0, 0, 0, 0}, {0, 0, 0, -2}, {-2, 0, 0, -2}, {0, 0, -1, 0}, {0, 0, -2, 0}, {0, -2, -2, 0}};

} // namespace

TEST_CASE("critical divisor of the quadratic family") {
  CHECK(critical_divisor(quad({0, -2, -2, 0})).form() == nf("x*y - z^2"));
  CHECK(critical_divisor(PolyMap(2, 2)).form() == nf("x*y"));
  CHECK(critical_divisor(PolyMap(2, 2)).degree() == 2);
}

TEST_CASE("orbit certification examples") {
  SUBCASE("power map") {
    const auto rec = orbit_certify(PolyMap(2, 2), critical_divisor(PolyMap(2, 2)), 8);
    CHECK(rec.status == OrbitStatus::PreperiodicProvenAt);
    CHECK(rec.m == 1);
    CHECK(radicals_of(rec) == std::vector<Form>{nf("x*y"), nf("x*y")});
  }
  SUBCASE("(0,0,0,-2)") {
    const PolyMap f = quad({0, 0, 0, -2});
    const auto rec = orbit_certify(f, critical_divisor(f), 8);
    CHECK(rec.status == OrbitStatus::PreperiodicProvenAt);
    CHECK(rec.m == 3);
    CHECK(radicals_of(rec) == std::vector<Form>{nf("x*y - x*z"), nf("x*y + x*z"), nf("x*y - 3*x*z"),
                                                nf("x*y - 3*x*z")});
  }
  SUBCASE("(0,-2,-2,0)") {
    const PolyMap f = quad({0, -2, -2, 0});
    const auto rec = orbit_certify(f, critical_divisor(f), 8);
    CHECK(rec.status == OrbitStatus::PreperiodicProvenAt);
    CHECK(rec.m == 2);
    const Form quartic = nf("x^2*y^2 - 4*x^3*z - 4*y^3*z + 18*x*y*z^2 - 27*z^4");
    CHECK(radicals_of(rec) == std::vector<Form>{nf("x*y - z^2"), quartic, quartic});
  }
  SUBCASE("budget") {
    const PolyMap f = quad({0, 0, 0, -2});
    const auto rec = orbit_certify(f, critical_divisor(f), 3);
    CHECK(rec.status == OrbitStatus::Inconclusive);
    CHECK(rec.m == 3);
    CHECK(rec.steps.size() == 3);
  }
  CHECK_THROWS_AS(normalize_divisor(form3("x + y")), NotInDivStar);
}

TEST_CASE("preperiodicity propagates past the certificate") {
  for (const Quad &t : kSix) {
    CAPTURE(to_string(t));
    const PolyMap f = quad(t);
    DivisorOrbit orbit(f, critical_divisor(f));
    const auto rec = orbit_certify(orbit, 8);
    REQUIRE(rec.status == OrbitStatus::PreperiodicProvenAt);
    Form acc = orbit.radical(0).form();
    for (int n = 1; n < rec.m; ++n)
      acc = squarefree_radical(acc * orbit.radical(n).form());
    for (int k = rec.m; k <= rec.m + 5; ++k)
      CHECK(divides(orbit.radical(k).form(), acc));
  }
}

TEST_CASE("classify the six examples") {
  const std::vector<int> depth = {1, 3, 3, 2, 2, 2};
  for (std::size_t i = 0; i < kSix.size(); ++i) {
    CAPTURE(to_string(kSix[i]));
    const auto c = classify(quad(kSix[i]));
    CHECK(c.verdict == Verdict::PcfProven);
    CHECK(c.step == depth[i]);
    CHECK(!c.place);
  }
  const auto c = classify(quad({2, 0, 0, -2}));
  CHECK(c.verdict == Verdict::PcfProven);
  CHECK(c.step == 3);
}

TEST_CASE("escape certificates") {
  SUBCASE("(0,0,1,0) escapes at infinity") {
    const PolyMap f = quad({0, 0, 1, 0});
    const auto c = classify(f);
    REQUIRE(c.verdict == Verdict::NotPcfProven);
    CHECK(c.place == Place::infinity());
    CHECK(c.step <= 5);
    CHECK(c.witness->approx.is_positive());
    CHECK(verify_witness(f, c));
    // The orbit is {y^2 - w^2 x z} with w = 1, 2, 5, 26, ...
    const std::vector<Form> conics = {nf("x*y"), nf("y^2 - x*z"), nf("y^2 - 4*x*z"), nf("y^2 - 25*x*z"),
                                      nf("y^2 - 676*x*z")};
    for (std::size_t n = 1; n < c.radicals.size() && n < conics.size(); ++n)
      CHECK(squarefree_radical(exact_quotient(c.radicals[n].form(), nf("x"))) == conics[n]);
  }
  SUBCASE("b = 1/2 escapes at 2") {
    const PolyMap f = PolyMap::quadratic(0, Rational(1, 2), 0, 0);
    const auto c = nonpcf_certify(f);
    REQUIRE(c.verdict == Verdict::NotPcfProven);
    CHECK(c.place == Place::prime(2));
    CHECK(c.step <= 3);
    CHECK(c.witness->exact > 0);
    CHECK(verify_witness(f, c));
  }
  SUBCASE("odd 2-adic critical divisor escapes at once") {
    const PolyMap f = quad({0, 1, 1, 0});
    const auto c = classify(f);
    REQUIRE(c.verdict == Verdict::NotPcfProven);
    CHECK(c.place == Place::prime(2));
    CHECK(c.step == 0);
    CHECK(c.witness->exact == 1);
  }
  SUBCASE("PCF maps never escape") {
    const auto c = nonpcf_certify(quad({0, 0, 0, -2}));
    CHECK(c.verdict == Verdict::Unknown);
    CHECK(c.step == 8);
  }
  SUBCASE("zero budget") {
    const auto c = classify(quad({1, 1, 1, 1}), Budgets{0});
    CHECK(c.verdict == Verdict::Unknown);
    CHECK(c.step == 0);
    CHECK(c.radicals.empty());
  }
}

TEST_CASE("certificates never conflict across budgets") {
  std::mt19937 rng(41);
  std::uniform_int_distribution<long> v(-3, 3);
  for (int trial = 0; trial < 25; ++trial) {
    const Quad t{2 * v(rng), v(rng), v(rng), 2 * v(rng)};
    CAPTURE(to_string(t));
    std::set<Verdict> seen;
    for (int steps = 1; steps <= 6; ++steps)
      seen.insert(classify(quad(t), Budgets{steps}).verdict);
    CHECK(!(seen.count(Verdict::PcfProven) && seen.count(Verdict::NotPcfProven)));
  }
}

TEST_CASE("PCF maps have vanishing critical height") {
  for (const Quad &t : kSix) {
    CAPTURE(to_string(t));
    const auto report = height_report(quad(t), 6);
    for (const auto &pl : report.places) {
      const auto k = pl.lambda_crit.kind;
      CHECK((k == GreenKind::Unresolved || (k == GreenKind::Exact && pl.lambda_crit.exact == 0)));
    }
    CHECK(report.crit.contains_zero());
  }
}

TEST_CASE("portraits") {
  SUBCASE("(0,0,-1,0)") {
    const PolyMap f = quad({0, 0, -1, 0});
    const auto P = portrait(f, classify(f).radicals);
    CHECK(component_strings(P) == std::set<std::string>{"x", "y", "-x*z + y^2"});
    CHECK(chain_strings(P) == std::vector<std::string>{"x -> x", "y -> -x*z + y^2 -> y"});
  }
  SUBCASE("(0,0,-2,0)") {
    const PolyMap f = quad({0, 0, -2, 0});
    const auto P = portrait(f, classify(f).radicals);
    CHECK(chain_strings(P) == std::vector<std::string>{"x -> x", "y -> -4*x*z + y^2 -> -4*x*z + y^2"});
  }
  SUBCASE("(0,0,0,-2)") {
    const PolyMap f = quad({0, 0, 0, -2});
    const auto P = portrait(f, classify(f).radicals);
    CHECK(component_strings(P) == std::set<std::string>{"x", "y - z", "y + z", "y - 3*z"});
    CHECK(chain_strings(P) == std::vector<std::string>{"x -> x", "y - z -> y + z -> y - 3*z -> y - 3*z"});
  }
  SUBCASE("(-2,0,0,-2)") {
    const PolyMap f = quad({-2, 0, 0, -2});
    const auto P = portrait(f, classify(f).radicals);
    CHECK(chain_strings(P) ==
          std::vector<std::string>{"x - z -> x + z -> x - 3*z -> x - 3*z", "y - z -> y + z -> y - 3*z -> y - 3*z"});
  }
  SUBCASE("(0,-2,-2,0)") {
    const PolyMap f = quad({0, -2, -2, 0});
    const auto P = portrait(f, classify(f).radicals);
    REQUIRE(P.components.size() == 2);
    CHECK(P.chains.size() == 1);
    CHECK(P.chains[0] == std::vector<int>{0, 1, 1});
  }
}

TEST_CASE("rational roots against planted roots") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Rational> c{Rational(1)};
    std::set<Rational> planted;
    const int k = 1 + trial % 4;
    for (int i = 0; i < k; ++i) {
      const Rational r = monicdyn::testing::small_rational(rng, 7);
      planted.insert(r);
      std::vector<Rational> next(c.size() + 1);
      for (std::size_t j = 0; j < c.size(); ++j) {
        next[j + 1] += c[j];
        next[j] -= c[j] * r;
      }
      c = next;
    }
    // An irreducible quadratic factor adds no roots.
    std::vector<Rational> next(c.size() + 2);
    for (std::size_t j = 0; j < c.size(); ++j) {
      next[j + 2] += c[j] * 3;
      next[j] += c[j] * 2;
    }
    const auto roots = rational_roots(next);
    CHECK(std::set<Rational>(roots.begin(), roots.end()) == planted);
  }
}

TEST_CASE("fixed points and translation conjugacy") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> v(-6, 6);
  int translated = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const Quad t{2 * v(rng), trial % 3 == 0 ? 0 : v(rng), v(rng), 2 * v(rng)};
    CAPTURE(to_string(t));
    const auto fps = rational_fixed_points(t);
    REQUIRE(!fps.empty());
    CHECK(std::find(fps.begin(), fps.end(), std::array<Rational, 2>{0, 0}) != fps.end());
    for (const auto &[u, w] : fps) {
      CHECK(u * u + t[0] * u + t[1] * w == u);
      CHECK(w * w + t[2] * u + t[3] * w == w);
      CHECK(quad(translate(t, {u, w})) == conjugate_by_translation(quad(t), u, w));
      ++translated;
    }
  }
  CHECK(translated > 60);
  CHECK(rational_fixed_points({0, 0, 0, -2}) ==
        std::vector<std::array<Rational, 2>>{{0, 0}, {0, 3}, {1, 0}, {1, 3}});
  CHECK(translate({0, 0, 0, -2}, {1, 0}) == Quad{2, 0, 0, -2});
}

TEST_CASE("conjugacy dedupe") {
  SUBCASE("swap") {
    const auto cls = conjugacy_dedupe({{0, 0, 0, -2}, {-2, 0, 0, 0}});
    REQUIRE(cls.size() == 1);
    CHECK(cls[0].representative == Quad{0, 0, 0, -2});
    CHECK(cls[0].members.size() == 2);
  }
  SUBCASE("translation") {
    const auto cls = conjugacy_dedupe({{0, 0, 0, -2}, {2, 0, 0, -2}});
    CHECK(cls.size() == 1);
  }
  SUBCASE("distinct portraits") { CHECK(conjugacy_dedupe({{0, 0, -1, 0}, {0, 0, -2, 0}}).size() == 2); }
  SUBCASE("the six are pairwise inequivalent and canonical") {
    const auto cls = conjugacy_dedupe(kSix);
    REQUIRE(cls.size() == 6);
    for (const auto &c : cls)
      CHECK(std::find(kSix.begin(), kSix.end(), c.representative) != kSix.end());
  }
  SUBCASE("orbits are closed and share one representative") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<long> v(-4, 4);
    for (int trial = 0; trial < 30; ++trial) {
      const Quad t{2 * v(rng), v(rng), v(rng), 2 * v(rng)};
      const auto orbit = conjugacy_orbit(t);
      const Quad rep = canonical_representative(orbit);
      for (const Quad &q : orbit)
        CHECK(canonical_representative(conjugacy_orbit(q)) == rep);
    }
  }
}

TEST_CASE("search bound") {
  const auto b = derive_search_bound(2, 2);
  CHECK(b.bound == 119);
  const double first = std::log(16 * (1 + std::sqrt(3.0)) * (1 + std::sqrt(3.0)));
  CHECK(b.first.lo_double() == doctest::Approx(first).epsilon(1e-12));
  CHECK(b.first.width() < 1e-30);
  CHECK(b.second.hi_double() < b.first.lo_double());
  CHECK(tuple_count(119) == 808890481);
  CHECK(tuple_count(10) == 53361);
  CHECK(tuple_count(0) == 1);
  CHECK_THROWS_AS(derive_search_bound(2, 3), UnsupportedFamily);
}
