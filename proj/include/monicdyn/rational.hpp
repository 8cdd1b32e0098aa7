#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace monicdyn {

// Exact rationals. mpq_class keeps every arithmetic result canonical
// (reduced, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

class ParseError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Parses "n", "-n", "n/m" (decimal). Throws ParseError on malformed input
/// or a zero denominator.
Rational parse_rational(std::string_view text);

/// "num/den", or "num" when den == 1.
std::string to_string(const Rational &q);

/// p-adic valuation of a nonzero integer.
int valuation(const Integer &n, unsigned long p);

/// p-adic valuation of a nonzero rational; the caller must check for zero.
int valuation(const Rational &q, unsigned long p);

inline bool is_p_integral(const Rational &q, unsigned long p) {
  return q == 0 || mpz_divisible_ui_p(q.get_den_mpz_t(), p) == 0;
}

bool is_prime(unsigned long p);

} // namespace monicdyn
