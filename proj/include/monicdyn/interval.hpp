#pragma once

#include "monicdyn/rational.hpp"

#include <mpfr.h>

#include <string>

namespace monicdyn {

inline constexpr mpfr_prec_t kDefaultPrecision = 128;

/// Closed real interval [lo, hi] with MPFR endpoints. Every operation
/// rounds outward, so the result contains the exact image of the inputs.
class Interval {
public:
  explicit Interval(mpfr_prec_t prec = kDefaultPrecision);
  Interval(const Interval &o);
  Interval(Interval &&o) noexcept;
  Interval &operator=(Interval o) noexcept;
  ~Interval();

  static Interval point(const Rational &q, mpfr_prec_t prec = kDefaultPrecision);
  /// Smallest interval containing both endpoints (lo > hi is an error).
  static Interval between(const Rational &lo, const Rational &hi, mpfr_prec_t prec = kDefaultPrecision);
  /// log q for q > 0.
  static Interval log_of(const Rational &q, mpfr_prec_t prec = kDefaultPrecision);

  mpfr_prec_t precision() const { return prec_; }
  const mpfr_t &lo() const { return lo_; }
  const mpfr_t &hi() const { return hi_; }

  friend Interval operator+(const Interval &a, const Interval &b);
  friend Interval operator-(const Interval &a, const Interval &b);
  friend Interval operator*(const Interval &a, const Interval &b);
  friend Interval operator*(const Interval &a, const Rational &q);
  friend Interval operator*(const Rational &q, const Interval &a) { return a * q; }
  friend Interval operator/(const Interval &a, const Rational &q);
  Interval operator-() const;

  Interval log() const;
  Interval exp() const;
  Interval sqrt() const;

  /// Pointwise max(x, y) over x in a, y in b.
  friend Interval max(const Interval &a, const Interval &b);
  /// [lo(a), hi(b)]; requires lo(a) <= hi(b).
  friend Interval span(const Interval &a, const Interval &b);
  /// Hull of the two intervals.
  friend Interval hull(const Interval &a, const Interval &b);
  /// Intersection with [0, inf); both endpoints clamp at 0.
  Interval clamp_nonneg() const;
  /// Intersection; requires overlap.
  Interval intersect(const Interval &o) const;
  bool overlaps(const Interval &o) const;
  bool contains(const Interval &o) const;
  bool contains(double x) const;
  bool contains_zero() const;
  bool is_positive() const { return mpfr_sgn(lo_) > 0; }
  /// Certainly a > b: lo(a) > hi(b).
  bool certainly_greater(const Interval &o) const { return mpfr_greater_p(lo_, o.hi_); }
  double width() const;
  double lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

  /// Decimal endpoints with `digits` significant digits, rounded outward.
  std::string lo_string(int digits = 20) const;
  std::string hi_string(int digits = 20) const;
  std::string to_string(int digits = 20) const;

private:
  mpfr_prec_t prec_;
  mpfr_t lo_;
  mpfr_t hi_;
};

} // namespace monicdyn
