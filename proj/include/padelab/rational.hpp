#ifndef PADELAB_RATIONAL_HPP
#define PADELAB_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace padelab {

// Exact rational scalar. mpq_class keeps gcd(|num|, den) = 1 and den > 0
// after every arithmetic operation, which is exactly the invariant we need.
using Rational = mpq_class;
using Integer = mpz_class;

// Parses "p", "p/q" or a decimal literal like "-0.25" into an exact rational.
Rational rational_from_string(const std::string& s);

// Canonical "p" / "p/q" form used by all artifacts.
std::string rational_to_string(const Rational& q);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

// log2|q| as a double; q must be nonzero.  Exact up to double rounding even
// for operands far outside double range (uses mpz_get_d_2exp on both parts).
double log2_abs(const Rational& q);

// |q|^(1/n) as a double, safe against overflow (goes through log2_abs).
double nth_root_abs(const Rational& q, long n);

Rational pow_rational(const Rational& base, unsigned long e);

} // namespace padelab

#endif
