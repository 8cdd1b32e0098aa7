#include "monicdyn/linalg.hpp"
#include "monicdyn/resultant.hpp"

#include "test_support.hpp"

#include <doctest.h>

using namespace monicdyn;
using monicdyn::testing::form3;

namespace {

Form form2(const char *text) { return Form::of(parse_poly(text, 2)); }

// Sylvester determinant of two binary forms, coefficients listed by
// descending power of the first variable.
Rational sylvester(const Form &f, const Form &g) {
  const int m = f.degree(), n = g.degree();
  const int size = m + n;
  Matrix<Rational> s(size, std::vector<Rational>(size));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k)
      s[r][r + k] = f.coeff(MultiIndex{m - k, k});
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k)
      s[n + r][r + k] = g.coeff(MultiIndex{n - k, k});
  return determinant(s);
}

Rational res(std::vector<Form> forms, MacaulayOptions opts = {}) {
  return macaulay_resultant(ResultantProblem{std::move(forms)}, opts);
}

Form quad_cf(const PolyMap &f) { return normalize_divisor(jacobian_form(f)).form(); }

} // namespace

TEST_CASE("resultant of pure powers") {
  CHECK(res({form3("x^2"), form3("y^2"), form3("z^2")}) == 1);
  CHECK(res({form3("x^3"), form3("y"), form3("z^2")}) == 1);
  CHECK(res({form2("x"), form2("y")}) == 1);
}

TEST_CASE("binary linear forms") {
  std::mt19937 rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    const Rational a = testing::small_rational(rng), b = testing::small_rational(rng);
    const Rational c = testing::small_rational(rng), d = testing::small_rational(rng);
    Poly f(2), g(2);
    f.add_term({1, 0}, a);
    f.add_term({0, 1}, b);
    g.add_term({1, 0}, c);
    g.add_term({0, 1}, d);
    if (f.is_zero() || g.is_zero())
      continue;
    CHECK(res({Form(f, 1), Form(g, 1)}) == a * d - b * c);
  }
}

TEST_CASE("binary forms against the Sylvester oracle") {
  CHECK(sylvester(form2("x^2 - y^2"), form2("y^2")) == 1);
  CHECK(res({form2("x^2 - y^2"), form2("y^2")}) == 1);
  std::mt19937 rng(2);
  for (int trial = 0; trial < 25; ++trial) {
    const Form f = testing::random_form(rng, 2, 1 + trial % 4);
    const Form g = testing::random_form(rng, 2, 1 + (trial / 4) % 3);
    if (f.is_zero() || g.is_zero())
      continue;
    CHECK(res({f, g}) == sylvester(f, g));
  }
}

TEST_CASE("ternary resultant restricts through a coordinate form") {
  // Res(F, G, z) = Res(F(x, y, 0), G(x, y, 0)).
  std::mt19937 rng(3);
  for (int trial = 0; trial < 12; ++trial) {
    const Form f = testing::random_form(rng, 3, 1 + trial % 3);
    const Form g = testing::random_form(rng, 3, 1 + trial % 2);
    const Form fh = restriction_to_H(f), gh = restriction_to_H(g);
    if (fh.is_zero() || gh.is_zero())
      continue;
    CHECK(res({f, g, form3("z")}) == sylvester(fh, gh));
  }
}

TEST_CASE("ternary linear forms give the determinant") {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix<Rational> a(3, std::vector<Rational>(3));
    std::vector<Form> forms;
    for (int i = 0; i < 3; ++i) {
      Poly p(3);
      for (int j = 0; j < 3; ++j) {
        a[i][j] = testing::small_rational(rng);
        MultiIndex m(3);
        m.set(j, 1);
        p.add_term(m, a[i][j]);
      }
      forms.emplace_back(p, 1);
    }
    CHECK(res(forms) == determinant(a));
  }
}

TEST_CASE("multiplicativity and coefficient degree") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 8; ++trial) {
    const Form f1 = testing::random_form(rng, 3, 1);
    const Form f2 = testing::random_form(rng, 3, 2);
    const Form g = testing::random_form(rng, 3, 2);
    const Form h = testing::random_form(rng, 3, 1 + trial % 2);
    if (f1.is_zero() || f2.is_zero() || g.is_zero() || h.is_zero())
      continue;
    CHECK(res({f1 * f2, g, h}) == res({f1, g, h}) * res({f2, g, h}));
    const Rational lambda(-3, 2);
    Rational scale = 1;
    for (int k = 0; k < g.degree() * h.degree(); ++k)
      scale *= lambda;
    CHECK(res({f2 * lambda, g, h}) == scale * res({f2, g, h}));
  }
}

TEST_CASE("planted common zeros") {
  // Every form vanishes at (1 : 2 : 3).
  CHECK(res({form3("2*x - y"), form3("3*y^2 - 4*y*z + 4*x*z"), form3("x*y*z - 6*x^3")}) == 0);
  const Form a = form3("3*x - z");
  CHECK(res({a, form3("y - 2*x"), form3("x^2 + y^2 - 5*x*z + x*y - 4*z^2 + 19*x^2")}) !=
        0);
  CHECK(res({form3("x^2 + x*z"), form3("y^2 + 2*y*z"), form3("z^2")}) == 1);
}

TEST_CASE("fallback routes agree with the direct quotient") {
  std::mt19937 rng(6);
  MacaulayOptions cov;
  cov.force_change_of_variables = true;
  MacaulayOptions pert;
  pert.force_perturbation = true;
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<Form> forms;
    for (int i = 0; i < 3; ++i)
      forms.push_back(testing::random_form(rng, 3, 1 + (trial + i) % 2));
    bool zero = false;
    for (const auto &f : forms)
      zero = zero || f.is_zero();
    if (zero)
      continue;
    const Rational direct = res(forms);
    CHECK(res(forms, cov) == direct);
    CHECK(res(forms, pert) == direct);
  }
  // Sparse forms whose extraneous minor vanishes.
  CHECK(res({form3("x*y"), form3("x*z + y^2"), form3("y*z + x^2 + z^2")}) ==
        res({form3("x*y"), form3("x*z + y^2"), form3("y*z + x^2 + z^2")}, pert));
}

TEST_CASE("invalid problems") {
  CHECK_THROWS_AS(res({form3("x"), form3("y")}), InvalidProblem);
  CHECK_THROWS_AS(res({}), InvalidProblem);
}

TEST_CASE("pushforward examples") {
  CHECK(pushforward(PolyMap(2, 2), normalize_divisor(form3("x - z"))).form() ==
        form3("x^2 - 2*x*z + z^2"));
  CHECK(pushforward(PolyMap::quadratic(0, 0, 0, -2), normalize_divisor(form3("y - z"))).form() ==
        form3("y^2 + 2*y*z + z^2"));
  const Divisor quartic =
      pushforward(PolyMap::quadratic(0, -2, -2, 0), normalize_divisor(form3("x*y - z^2")));
  CHECK(quartic.form() == form3("x^2*y^2 - 4*x^3*z - 4*y^3*z + 18*x*y*z^2 - 27*z^4"));
}

TEST_CASE("pushforward on the line") {
  // f(x) = x^3 - 2x^2 + x/2 pushes {x = r} to {x = f(r)}.
  PolyMap f(1, 3);
  f.set_coeff(0, MultiIndex{2, 1}, -2);
  f.set_coeff(0, MultiIndex{1, 2}, Rational(1, 2));
  for (int r = -3; r <= 3; ++r) {
    Poly p = parse_poly("x", 2);
    p.add_term({0, 1}, -r);
    const Rational fr = Rational(r * r * r) - 2 * r * r + Rational(r) / 2;
    Poly q = parse_poly("x", 2);
    q.add_term({0, 1}, -fr);
    CHECK(pushforward(f, normalize_divisor(Form(p, 1))).form() == Form(q, 1));
  }
}

TEST_CASE("norm route matches the interpolation route") {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 6; ++trial) {
    const PolyMap f = testing::random_quadratic(rng, 3);
    const Divisor D = normalize_divisor(testing::random_div_star(rng, 3, 1 + trial % 2));
    CHECK(pushforward(f, D) == pushforward_by_interpolation(f, D));
  }
  PolyMap g(1, 3);
  g.set_coeff(0, MultiIndex{1, 2}, 2);
  const Divisor E = normalize_divisor(Form::of(parse_poly("x^2 - 3*x*y + y^2", 2)));
  CHECK(pushforward(g, E) == pushforward_by_interpolation(g, E));
}

TEST_CASE("degree law and multiplicativity") {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 8; ++trial) {
    const int d = 2 + trial % 2;
    const PolyMap f = testing::random_map(rng, 2, d, 2);
    const Divisor D = normalize_divisor(testing::random_div_star(rng, 3, 1 + trial % 2));
    const Divisor E = normalize_divisor(testing::random_div_star(rng, 3, 1));
    const Divisor fD = pushforward(f, D);
    CHECK(fD.degree() == d * D.degree());
    CHECK(in_div_star(fD.form()));
    CHECK(pushforward(f, D + E).form() == fD.form() * pushforward(f, E).form());
  }
}

TEST_CASE("grading equivariance of the critical pushforward") {
  std::mt19937 rng(10);
  for (int trial = 0; trial < 8; ++trial) {
    const PolyMap f = testing::random_quadratic(rng, 4);
    Rational alpha = testing::small_rational(rng, 3);
    if (alpha == 0)
      alpha = Rational(2, 3);
    const Form G = pushforward(f, normalize_divisor(jacobian_form(f))).form();
    const PolyMap fa = f.graded(alpha);
    const Form Ga = pushforward(fa, normalize_divisor(jacobian_form(fa))).form();
    CHECK(Ga.poly() == G.poly().scale_variable(2, alpha * alpha));
  }
}

TEST_CASE("closed-form coefficients of the critical pushforward") {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const PolyMap f = testing::random_quadratic(rng, 6);
    const auto [a, b, c, d] = f.quadratic_params();
    const Form G = pushforward(f, normalize_divisor(quad_cf(f))).form();
    CHECK(G.degree() == 4);
    CHECK(G.coeff({2, 2, 0}) == 1);
    CHECK(G.coeff({3, 0, 1}) == -c * c);
    CHECK(G.coeff({2, 1, 1}) == a * c + d * d / 2);
    CHECK(G.coeff({1, 2, 1}) == a * a / 2 + b * d);
    CHECK(G.coeff({0, 3, 1}) == -b * b);
    const Rational disc = a * a * d * d - 27 * b * b * c * c + 4 * a * a * a * c + 4 * b * d * d * d +
                          18 * a * b * c * d;
    CHECK(G.coeff({0, 0, 4}) == disc * (a * d - b * c) * (a * d - b * c) / 256);
  }
}

TEST_CASE("skew-product law") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const Rational w = testing::small_rational(rng), c = testing::small_rational(rng);
    auto D = [](const Rational &v) {
      Poly p = parse_poly("y^2", 3);
      p.add_term({1, 0, 1}, -v * v);
      return normalize_divisor(Form(p, 2));
    };
    const Divisor image = pushforward(PolyMap::quadratic(0, 0, c, 0), D(w));
    CHECK(image == D(w * w + c) + D(w * w + c));
  }
}
