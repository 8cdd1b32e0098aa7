// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include "monicdyn/gcd.hpp"
#include "monicdyn/heights.hpp"
#include "monicdyn/json_io.hpp"
#include "monicdyn/pcf.hpp"
#include "monicdyn/resultant.hpp"
#include "monicdyn/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace monicdyn;

namespace {

// Pinned limits.
constexpr double kPurePowerSeconds = 1.0;
constexpr double kClosedFormSeconds = 60.0;
constexpr double kTableSeconds = 60.0;
constexpr double kBox10Seconds = 30 * 60.0;
constexpr int kBox10Threads = 4;
constexpr double kHeightGap = 6.0;
constexpr int kHeightIterations = 7;
constexpr int kMaxEscapeDepth = 5;
constexpr long kBound = 119;
constexpr std::uint64_t kBoundCount = 808890481ULL;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(3);
  s << std::fixed << x;
  return s.str();
}

Form form3(const char *text) { return Form::of(parse_poly(text, 3)); }
std::string nf(const char *text) { return normalize_divisor(form3(text)).form().to_string(); }
PolyMap quad(const Quad &t) { return PolyMap::quadratic(t[0], t[1], t[2], t[3]); }

Rational rational_in(std::mt19937 &rng, int range, int max_den) {
  std::uniform_int_distribution<int> num(-range, range), den(1, max_den);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

Quad random_quad(std::mt19937 &rng, int range) {
  std::uniform_int_distribution<long> v(-range, range);
  return {v(rng), v(rng), v(rng), v(rng)};
}

PolyMap random_map(std::mt19937 &rng, int N, int d, int range) {
  std::uniform_int_distribution<int> v(-range, range);
  PolyMap f(N, d);
  for (int i = 0; i < N; ++i)
    for (std::size_t k = 0; k < f.indices().size(); ++k)
      f.set_coeff(i, k, v(rng));
  return f;
}

Divisor random_div_star(std::mt19937 &rng, int degree, int range) {
  std::uniform_int_distribution<int> v(-range, range), slot(0, 1);
  Poly p(3);
  MultiIndex h(3);
  for (int k = 0; k < degree; ++k) {
    const int i = slot(rng);
    h.set(i, h[i] + 1);
  }
  p.add_term(h, 1);
  for (const auto &m : indices_of_degree(3, degree))
    if (m.last() > 0)
      p.add_term(m, v(rng));
  return normalize_divisor(Form(std::move(p), degree));
}

const std::vector<Quad> kSix = {
    {0, 0, 0, 0}, {0, 0, 0, -2}, {-2, 0, 0, -2}, {0, 0, -1, 0}, {0, 0, -2, 0}, {0, -2, -2, 0}};

struct Outcome {
  bool pass;
  std::string detail;
};

// 1. Pure-power systems normalize to 1.
Outcome pure_powers() {
  const auto start = Clock::now();
  int systems = 0;
  bool ok = true;
  for (int n = 2; n <= 4; ++n) {
    std::vector<int> deg(n, 1);
    for (;;) {
      std::vector<Form> forms;
      for (int i = 0; i < n; ++i) {
        MultiIndex m(n);
        m.set(i, deg[i]);
        forms.push_back(Form::of(Poly::monomial(m)));
      }
      ok = ok && macaulay_resultant(ResultantProblem{forms}) == 1;
      ++systems;
      int i = 0;
      while (i < n && deg[i] == 3)
        deg[i++] = 1;
      if (i == n)
        break;
      ++deg[i];
    }
  }
  const double t = seconds_since(start);
  return {ok && t < kPurePowerSeconds, std::to_string(systems) + " systems, " + fmt(t) + " s"};
}

// 2. Closed-form coefficients of f_*(C_f).
Outcome closed_form() {
  const auto start = Clock::now();
  std::mt19937 rng(20);
  bool ok = true;
  for (int trial = 0; trial < 20; ++trial) {
    const Quad q = random_quad(rng, 20);
    const Rational a = q[0], b = q[1], c = q[2], d = q[3];
    const Form G = pushforward(quad(q), critical_divisor(quad(q))).form();
    const Rational disc = a * a * d * d - 27 * b * b * c * c + 4 * a * a * a * c + 4 * b * d * d * d + 18 * a * b * c * d;
    ok = ok && G.degree() == 4 && G.coeff({2, 2, 0}) == 1 && G.coeff({3, 0, 1}) == -c * c &&
         G.coeff({2, 1, 1}) == a * c + d * d / 2 && G.coeff({1, 2, 1}) == a * a / 2 + b * d &&
         G.coeff({0, 3, 1}) == -b * b && G.coeff({0, 0, 4}) == disc * (a * d - b * c) * (a * d - b * c) / 256;
  }
  const double t = seconds_since(start);
  return {ok && t < kClosedFormSeconds, "20 tuples, " + fmt(t) + " s"};
}

// 3. deg f_*(D) = d^{N-1} deg D.
Outcome degree_law() {
  std::mt19937 rng(30);
  int bad = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + trial % 2;
    const PolyMap f = random_map(rng, 2, d, 3);
    const Divisor D = random_div_star(rng, 1 + trial % 3, 3);
    bad += pushforward(f, D).degree() != d * D.degree();
  }
  return {bad == 0, "50 instances, " + std::to_string(bad) + " violations"};
}

// 4. Res(J_f, f) for the graded map equals the original with y_N scaled by alpha^d.
Outcome grading() {
  std::mt19937 rng(40);
  int bad = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + trial % 2;
    const PolyMap f = trial % 4 == 0 ? quad(random_quad(rng, 6)) : random_map(rng, 2, d, 3);
    Rational alpha = rational_in(rng, 4, 3);
    if (alpha == 0)
      alpha = Rational(3, 2);
    const PolyMap g = f.graded(alpha);
    Rational ad = 1;
    for (int k = 0; k < f.d(); ++k)
      ad *= alpha;
    const Poly F = pushforward(f, critical_divisor(f)).form().poly();
    const Poly Fg = pushforward(g, critical_divisor(g)).form().poly();
    bad += Fg != F.scale_variable(2, ad);
  }
  return {bad == 0, "20 instances, " + std::to_string(bad) + " violations"};
}

// 5. lambda_p(f_* D) = d lambda_p(D) past B_p, and lambda_p(f_* C_f) = d B_p at good odd p.
Outcome nonarch_laws() {
  std::mt19937 rng(50);
  const unsigned long primes[] = {2, 3, 5};
  int law = 0, law_bad = 0, tries = 0;
  while (law < 50 && tries < 1000) {
    ++tries;
    const unsigned long p = primes[tries % 3];
    const int d = 2 + tries % 2;
    const PolyMap f = d == 2 ? quad(random_quad(rng, 5)) : random_map(rng, 2, 3, 2);
    // A conic whose z-terms carry a power of p in the denominator.
    std::uniform_int_distribution<int> num(-9, 9), e(1, 3);
    Rational denom = 1;
    for (int k = e(rng); k > 0; --k)
      denom *= static_cast<long>(p);
    Poly form = parse_poly("x*y", 3);
    form.add_term({1, 0, 1}, Rational(num(rng)) / denom);
    form.add_term({0, 1, 1}, Rational(num(rng)));
    form.add_term({0, 0, 2}, Rational(num(rng)) / denom);
    const Divisor D = normalize_divisor(Form(form, 2));
    const Rational lambda = lambda_nonarch(D, p);
    if (lambda <= coeff_height_nonarch(f, p))
      continue;
    ++law;
    law_bad += lambda_nonarch(pushforward(f, D), p) != d * lambda;
  }

  const unsigned long odd[] = {3, 5, 7};
  int good_bad = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const unsigned long p = odd[trial % 3];
    const PolyMap f = trial % 2 ? quad(random_quad(rng, 9)) : random_map(rng, 2, 2, 4);
    good_bad += lambda_nonarch(pushforward(f, critical_divisor(f)), p) != f.d() * coeff_height_nonarch(f, p);
  }
  return {law == 50 && law_bad == 0 && good_bad == 0, std::to_string(law) + " transformation instances (" +
                                                          std::to_string(law_bad) + " violations), 50 good-place (" +
                                                          std::to_string(good_bad) + " violations)"};
}

// 6. The six PCF examples: supports, the quartic, and the (0,0,-1,0) portrait.
Outcome table() {
  const auto start = Clock::now();
  const std::vector<std::set<std::string>> supports = {
      {nf("x"), nf("y")},
      {nf("x"), nf("y - z"), nf("y + z"), nf("y - 3*z")},
      {nf("x - z"), nf("x + z"), nf("x - 3*z"), nf("y - z"), nf("y + z"), nf("y - 3*z")},
      {nf("x"), nf("y"), nf("y^2 - x*z")},
      {nf("x"), nf("y"), nf("y^2 - 4*x*z")},
      {nf("x*y - z^2"), nf("x^2*y^2 - 4*x^3*z - 4*y^3*z + 18*x*y*z^2 - 27*z^4")},
  };
  bool ok = true;
  std::string detail;
  for (std::size_t i = 0; i < kSix.size(); ++i) {
    const PolyMap f = quad(kSix[i]);
    const Certificate c = classify(f);
    std::set<std::string> got;
    for (const auto &comp : portrait(f, c.radicals).components)
      got.insert(comp.divisor.form().to_string());
    const bool row = c.verdict == Verdict::PcfProven && got == supports[i];
    ok = ok && row;
    if (!row)
      detail += " mismatch at " + to_string(kSix[i]) + ";";
  }

  // Oracle for (0,0,-1,0): radicals of the pushforward of each component.
  const PolyMap f = quad({0, 0, -1, 0});
  auto image = [&](const char *text) {
    return normalize_divisor(squarefree_radical(pushforward(f, normalize_divisor(form3(text))).form())).form().to_string();
  };
  const std::string x = nf("x"), y = nf("y"), conic = nf("y^2 - x*z");
  ok = ok && image("x") == x && image("y") == conic && image("y^2 - x*z") == y;
  const Portrait P = portrait(f, classify(f).radicals);
  std::set<std::vector<std::string>> chains;
  for (const auto &chain : P.chains) {
    std::vector<std::string> forms;
    for (int k : chain)
      forms.push_back(P.components[k].divisor.form().to_string());
    chains.insert(forms);
  }
  const std::set<std::vector<std::string>> expected = {{x, x}, {y, conic, y}};
  ok = ok && chains == expected;
  if (chains != expected)
    detail += " (0,0,-1,0) portrait differs;";
  const double t = seconds_since(start);
  return {ok && t < kTableSeconds, "six tuples," + detail + " " + fmt(t) + " s"};
}

std::vector<Quad> representatives(const SearchResult &r) {
  std::vector<Quad> out;
  for (const auto &c : r.classes)
    out.push_back(c.representative);
  std::sort(out.begin(), out.end());
  return out;
}

struct SearchRuns {
  SearchResult box2;
  SearchResult box10;
  double box10_seconds = 0;
};

// 7. Box searches.
Outcome desk_search(SearchRuns &runs) {
  std::vector<Quad> six = kSix;
  std::sort(six.begin(), six.end());
  SearchConfig cfg{2};
  cfg.threads = kBox10Threads;
  runs.box2 = search_box(cfg);
  const bool box2 = runs.box2.complete && runs.box2.unknown() == 0 && representatives(runs.box2) == six;

  cfg.box = 10;
  const auto start = Clock::now();
  runs.box10 = search_box(cfg);
  runs.box10_seconds = seconds_since(start);
  const bool box10 = runs.box10.complete && runs.box10.unknown() == 0 && representatives(runs.box10) == six;
  return {box2 && box10 && runs.box10_seconds < kBox10Seconds,
          "box 2: " + std::to_string(runs.box2.unknown()) + " unknown, " + std::to_string(runs.box2.classes.size()) +
              " classes; box 10: " + std::to_string(runs.box10.examined) + " tuples, " +
              std::to_string(runs.box10.unknown()) + " unknown, " + std::to_string(runs.box10.classes.size()) +
              " classes, " + fmt(runs.box10_seconds) + " s on " + std::to_string(kBox10Threads) + " threads"};
}

// 8. Search bound.
Outcome bound() {
  const SearchBound b = derive_search_bound(2, 2);
  const Integer count = tuple_count(b.bound);
  return {b.bound == kBound && count == Integer(static_cast<unsigned long>(kBoundCount)),
          "bound " + std::to_string(b.bound) + ", " + count.get_str() + " tuples"};
}

// 9. Archimedean escape of (0,0,1,0).
Outcome escape() {
  const PolyMap f = quad({0, 0, 1, 0});
  const Certificate c = classify(f);
  const bool ok = c.verdict == Verdict::NotPcfProven && c.place && c.place->is_arch() && c.step <= kMaxEscapeDepth &&
                  verify_witness(f, c);
  return {ok, to_string(c.verdict) + " at " + (c.place ? c.place->to_string() : "-") + ", depth " +
                  std::to_string(c.step)};
}

// 10. crit - weil stays bounded; the six have zero critical height.
Outcome heights() {
  std::mt19937 rng(100);
  double worst = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const PolyMap f = quad(random_quad(rng, 50));
    const Interval gap = crit_height_interval(f, kHeightIterations) - weil_height(f);
    worst = std::max({worst, std::abs(gap.lo_double()), std::abs(gap.hi_double())});
  }
  bool six = true;
  const double cap = std::log(3.0) + std::log(2.0);
  for (const Quad &t : kSix) {
    const PolyMap f = quad(t);
    six = six && crit_height_interval(f, kHeightIterations).contains_zero() && weil_height(f).hi_double() <= cap;
  }
  return {worst <= kHeightGap && six, "max |crit - weil| bound " + fmt(worst) + " over 30 maps, six PCF " +
                                          (six ? "vanish" : "do not vanish")};
}

// 11. f_*(D_w) = 2 D_{w^2 + c} for f = (x^2, y^2 + c x z).
Outcome skew_product() {
  std::mt19937 rng(110);
  auto D = [](const Rational &v) {
    Poly p = parse_poly("y^2", 3);
    p.add_term({1, 0, 1}, -v * v);
    return normalize_divisor(Form(p, 2));
  };
  int bad = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Rational w = rational_in(rng, 7, 4), c = rational_in(rng, 7, 4);
    const Divisor target = D(w * w + c);
    bad += pushforward(PolyMap::quadratic(0, 0, c, 0), D(w)) != target + target;
  }
  return {bad == 0, "20 pairs, " + std::to_string(bad) + " violations"};
}

// Emitted bytes for one thread count: the six certificates and portraits,
// plus the box-2 and box-10 reports.
std::string emitted(const SearchConfig &base, int threads, const std::string &checkpoint, bool interrupt) {
  std::vector<std::string> six(kSix.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::size_t i = 0; i < kSix.size(); ++i) {
    const PolyMap f = quad(kSix[i]);
    const Certificate c = classify(f);
    six[i] = to_json(c).dump() + to_json(portrait(f, c.radicals)).dump();
  }
  std::string out;
  for (const auto &s : six)
    out += s + '\n';
  for (long box : {2L, 10L}) {
    SearchConfig cfg = base;
    cfg.box = box;
    cfg.threads = threads;
    if (!checkpoint.empty()) {
      cfg.checkpoint = checkpoint + std::to_string(box);
      std::filesystem::remove(cfg.checkpoint);
      if (interrupt) {
        cfg.stop_after_chunks = box == 2 ? 1 : 20;
        search_box(cfg);
        cfg.stop_after_chunks.reset();
        cfg.threads = threads == 1 ? 2 : 1;
      }
    }
    const SearchResult r = search_box(cfg);
    out += to_csv(r) + to_json(r).dump() + '\n';
    if (!checkpoint.empty())
      std::filesystem::remove(cfg.checkpoint);
  }
  return out;
}

// 12. Byte-identical outputs across thread counts and a checkpoint/resume.
Outcome determinism(const SearchRuns &runs) {
  SearchConfig base{0};
  base.chunk_size = 512;
  const std::string reference = emitted(base, 1, "", false);
  std::string detail;
  bool ok = true;
  for (int threads : {2, 8}) {
    const bool same = emitted(base, threads, "", false) == reference;
    ok = ok && same;
    detail += std::to_string(threads) + " threads " + (same ? "match" : "differ") + ", ";
  }
  const std::string dir = std::filesystem::temp_directory_path() / "monicdyn_acceptance_ckpt_";
  const bool resumed = emitted(base, 8, dir, true) == reference;
  ok = ok && resumed;
  detail += std::string("resume ") + (resumed ? "matches" : "differs");
  // The criterion-7 runs used another chunk size and thread count.
  const bool crit7 = to_csv(runs.box2) + to_csv(runs.box10) ==
                     [&] {
                       SearchConfig c{2};
                       c.threads = 1;
                       std::string s = to_csv(search_box_serial(c));
                       c.box = 10;
                       return s + to_csv(search_box_serial(c));
                     }();
  ok = ok && crit7;
  detail += std::string(", serial reference ") + (crit7 ? "matches" : "differs");
  return {ok, detail};
}

} // namespace

int main() {
  int failures = 0;
  auto report = [&](int n, const char *name, const std::function<Outcome()> &check) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << "criterion " << n << " [" << name << "]: " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail
              << std::endl;
  };
  SearchRuns runs;
  report(1, "resultant normalization", pure_powers);
  report(2, "closed-form pushforward", closed_form);
  report(3, "degree law", degree_law);
  report(4, "grading equivariance", grading);
  report(5, "non-archimedean laws", nonarch_laws);
  report(6, "six PCF examples", table);
  report(7, "box search", [&] { return desk_search(runs); });
  report(8, "search bound", bound);
  report(9, "escape certificate", escape);
  report(10, "height comparison", heights);
  report(11, "skew-product law", skew_product);
  report(12, "determinism", [&] { return determinism(runs); });
  return failures == 0 ? 0 : 1;
}
