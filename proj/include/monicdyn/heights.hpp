#pragma once

#include "monicdyn/divisor.hpp"
#include "monicdyn/interval.hpp"
#include "monicdyn/poly_map.hpp"

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace monicdyn {

class ZeroForm : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A place of Q: the archimedean one (p == 0) or a prime p.
struct Place {
  unsigned long p = 0;

  static Place infinity() { return {}; }
  static Place prime(unsigned long p);
  bool is_arch() const { return p == 0; }
  /// "inf" or the decimal prime.
  std::string to_string() const;
  static Place parse(const std::string &text);
  auto operator<=>(const Place &) const = default;
};

/// A height value at one place. Non-archimedean values are exact rational
/// multiples of log p; `approx` always encloses the real value.
struct LogValue {
  Place place;
  Rational exact;
  Interval approx;

  static LogValue nonarch(unsigned long p, const Rational &r, mpfr_prec_t prec = kDefaultPrecision);
  static LogValue arch(Interval value);
};

/// r with log ||c||_p = r log p.
Rational gauss_norm(const Form &c, unsigned long p);

/// lambda_p(D) / log p.
Rational lambda_nonarch(const Divisor &D, unsigned long p);

/// Enclosure of lambda_inf(D) from the coefficient size of its normalized form.
Interval lambda_arch_bounds(const Divisor &D, mpfr_prec_t prec = kDefaultPrecision);

bool good_reduction_at(const PolyMap &f, unsigned long p);

/// B_p(f) / log p.
Rational coeff_height_nonarch(const PolyMap &f, unsigned long p);
Interval coeff_height_arch(const PolyMap &f, mpfr_prec_t prec = kDefaultPrecision);
LogValue coeff_height(const PolyMap &f, Place v, mpfr_prec_t prec = kDefaultPrecision);

/// B_inf(f) + log(2 dim Pow(N, d) / N): above it lambda_inf escapes.
Interval arch_threshold(const PolyMap &f, mpfr_prec_t prec = kDefaultPrecision);
/// (1 / (d - 1)) log(1 / (1 - 2^{-1/d})).
Interval arch_green_error(int d, mpfr_prec_t prec = kDefaultPrecision);

/// Radicals of the forward orbit D, f_*D, f^2_*D, ... computed on demand.
/// Local heights only see supports, so every Green computation runs on
/// these radicals.
class DivisorOrbit {
public:
  DivisorOrbit(PolyMap f, const Divisor &D);

  const PolyMap &map() const { return f_; }
  /// Radical of the n-th iterate, Div*-normalized.
  const Divisor &radical(int n);
  int computed() const { return static_cast<int>(radicals_.size()); }

private:
  PolyMap f_;
  std::vector<Divisor> radicals_;
};

enum class GreenKind {
  Exact,          // value known exactly (non-archimedean)
  Bounded,        // escape reached; value enclosed but not proven positive
  ProvenPositive, // escape reached; enclosure has positive lower end
  Unresolved      // no escape within the budget; value lies in [0, upper]
};

std::string to_string(GreenKind k);

struct GreenResult {
  Place place;
  GreenKind kind = GreenKind::Unresolved;
  /// Decisive iterate for Exact / Bounded / ProvenPositive; the number of
  /// pushforwards examined for Unresolved.
  int step = 0;
  /// Non-archimedean: the value (Exact) or the upper bound (Unresolved),
  /// in units of log p.
  Rational exact;
  /// Enclosure of G_{f,v}(D) at every place.
  Interval value;
};

/// G_{f,p}(D), examining iterates 0..max_iter.
GreenResult green_nonarch(DivisorOrbit &orbit, unsigned long p, int max_iter,
                          mpfr_prec_t prec = kDefaultPrecision);
GreenResult green_nonarch(const PolyMap &f, const Divisor &D, unsigned long p, int max_iter,
                          mpfr_prec_t prec = kDefaultPrecision);

/// G_{f,inf}(D), examining iterates 0..max_iter.
GreenResult green_arch_bounds(DivisorOrbit &orbit, int max_iter, mpfr_prec_t prec = kDefaultPrecision);
GreenResult green_arch_bounds(const PolyMap &f, const Divisor &D, int max_iter,
                              mpfr_prec_t prec = kDefaultPrecision);

GreenResult green(DivisorOrbit &orbit, Place v, int max_iter, mpfr_prec_t prec = kDefaultPrecision);

/// Places where B_v(f) or lambda_v(D) can be nonzero, plus primes p <= d:
/// infinity first, then primes ascending.
std::vector<Place> relevant_places(const PolyMap &f, const Divisor *D = nullptr);

/// Prime divisors of a positive integer, ascending.
std::vector<unsigned long> prime_factors(Integer n);

Interval weil_height(const PolyMap &f, mpfr_prec_t prec = kDefaultPrecision);
Interval canonical_height_interval(const PolyMap &f, const Divisor &D, int max_iter,
                                   mpfr_prec_t prec = kDefaultPrecision);
Interval crit_height_interval(const PolyMap &f, int max_iter, mpfr_prec_t prec = kDefaultPrecision);

struct PlaceReport {
  Place place;
  LogValue B;
  GreenResult lambda_crit;
};

struct HeightReport {
  std::vector<PlaceReport> places;
  Interval weil;
  Interval crit;
};

HeightReport height_report(const PolyMap &f, int max_iter, mpfr_prec_t prec = kDefaultPrecision);

} // namespace monicdyn
