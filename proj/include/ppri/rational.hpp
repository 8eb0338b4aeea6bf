#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ppri {

// Arbitrary-precision integers and rationals. mpq_class keeps every value in
// lowest terms with a positive denominator once canonicalized, and all of its
// arithmetic preserves that.
using Integer = mpz_class;
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den);

// Parses "a" or "a/b" (optional leading sign, surrounding blanks ignored).
// Throws ParseError on anything else, including a zero denominator.
Rational parse_rational(std::string_view text);

// Like parse_rational, but also accepts a terminating decimal such as "1.5",
// converted exactly (1.5 -> 3/2).
Rational parse_exact_decimal(std::string_view text);

// "a" when the denominator is 1, otherwise "a/b".
std::string to_string(const Rational& x);
std::string to_string(const Integer& x);

bool is_integer(const Rational& x);
Integer floor(const Rational& x);
Rational abs(const Rational& x);
Rational pow(const Rational& base, long exponent);
Integer pow(const Integer& base, unsigned long exponent);

// Natural log of |x| for x != 0, usable far outside the double range.
double log_abs(const Rational& x);

} // namespace ppri
