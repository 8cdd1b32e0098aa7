#include "monicdyn/interval.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace monicdyn {

Interval::Interval(mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval &o) : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval &&o) noexcept : Interval(o.prec_) {
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

Interval &Interval::operator=(Interval o) noexcept {
  std::swap(prec_, o.prec_);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::point(const Rational &q, mpfr_prec_t prec) { return between(q, q, prec); }

Interval Interval::between(const Rational &lo, const Rational &hi, mpfr_prec_t prec) {
  if (lo > hi)
    throw std::invalid_argument("Interval: lo > hi");
  Interval r(prec);
  mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::log_of(const Rational &q, mpfr_prec_t prec) {
  if (q <= 0)
    throw std::domain_error("Interval::log_of: non-positive argument");
  return point(q, prec).log();
}

namespace {

mpfr_prec_t joint(const Interval &a, const Interval &b) { return std::max(a.precision(), b.precision()); }

} // namespace

Interval operator+(const Interval &a, const Interval &b) {
  Interval r(joint(a, b));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval &a, const Interval &b) {
  Interval r(joint(a, b));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

Interval operator*(const Interval &a, const Interval &b) {
  Interval r(joint(a, b));
  mpfr_t t;
  mpfr_init2(t, r.prec_);
  const mpfr_srcptr xs[2] = {a.lo_, a.hi_};
  const mpfr_srcptr ys[2] = {b.lo_, b.hi_};
  bool first = true;
  for (auto x : xs) {
    for (auto y : ys) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_))
        mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_))
        mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return r;
}

Interval operator*(const Interval &a, const Rational &q) {
  Interval r(a.prec_);
  if (q >= 0) {
    mpfr_mul_q(r.lo_, a.lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_mul_q(r.hi_, a.hi_, q.get_mpq_t(), MPFR_RNDU);
  } else {
    mpfr_mul_q(r.lo_, a.hi_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_mul_q(r.hi_, a.lo_, q.get_mpq_t(), MPFR_RNDU);
  }
  return r;
}

Interval operator/(const Interval &a, const Rational &q) {
  if (q == 0)
    throw std::domain_error("Interval: division by zero");
  Interval r(a.prec_);
  if (q > 0) {
    mpfr_div_q(r.lo_, a.lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_div_q(r.hi_, a.hi_, q.get_mpq_t(), MPFR_RNDU);
  } else {
    mpfr_div_q(r.lo_, a.hi_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_div_q(r.hi_, a.lo_, q.get_mpq_t(), MPFR_RNDU);
  }
  return r;
}

Interval Interval::operator-() const {
  Interval r(prec_);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval Interval::log() const {
  if (mpfr_sgn(lo_) <= 0)
    throw std::domain_error("Interval::log: interval not positive");
  Interval r(prec_);
  mpfr_log(r.lo_, lo_, MPFR_RNDD);
  mpfr_log(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::exp() const {
  Interval r(prec_);
  mpfr_exp(r.lo_, lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::sqrt() const {
  if (mpfr_sgn(lo_) < 0)
    throw std::domain_error("Interval::sqrt: negative interval");
  Interval r(prec_);
  mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval max(const Interval &a, const Interval &b) {
  Interval r(joint(a, b));
  mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval span(const Interval &a, const Interval &b) {
  if (mpfr_greater_p(a.lo_, b.hi_))
    throw std::invalid_argument("Interval: lo > hi");
  Interval r(joint(a, b));
  mpfr_set(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_set(r.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval hull(const Interval &a, const Interval &b) {
  Interval r(joint(a, b));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::clamp_nonneg() const {
  Interval r(*this);
  if (mpfr_sgn(r.lo_) < 0)
    mpfr_set_zero(r.lo_, 1);
  if (mpfr_sgn(r.hi_) < 0)
    mpfr_set_zero(r.hi_, 1);
  return r;
}

Interval Interval::intersect(const Interval &o) const {
  if (!overlaps(o))
    throw std::domain_error("Interval::intersect: disjoint intervals");
  Interval r(joint(*this, o));
  mpfr_max(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_min(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

bool Interval::overlaps(const Interval &o) const {
  return mpfr_lessequal_p(lo_, o.hi_) && mpfr_lessequal_p(o.lo_, hi_);
}

bool Interval::contains(const Interval &o) const {
  return mpfr_lessequal_p(lo_, o.lo_) && mpfr_lessequal_p(o.hi_, hi_);
}

bool Interval::contains(double x) const { return mpfr_cmp_d(lo_, x) <= 0 && mpfr_cmp_d(hi_, x) >= 0; }

bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

double Interval::width() const {
  mpfr_t t;
  mpfr_init2(t, prec_);
  mpfr_sub(t, hi_, lo_, MPFR_RNDU);
  const double w = mpfr_get_d(t, MPFR_RNDU);
  mpfr_clear(t);
  return w;
}

namespace {

std::string format(const mpfr_t x, int digits, bool up) {
  char *buf = nullptr;
  if (up)
    mpfr_asprintf(&buf, "%.*RUe", digits - 1, x);
  else
    mpfr_asprintf(&buf, "%.*RDe", digits - 1, x);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

} // namespace

std::string Interval::lo_string(int digits) const { return format(lo_, digits, false); }
std::string Interval::hi_string(int digits) const { return format(hi_, digits, true); }
std::string Interval::to_string(int digits) const {
  return "[" + lo_string(digits) + ", " + hi_string(digits) + "]";
}

} // namespace monicdyn
