#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace motzkin {

/// Exact arbitrary-precision rational; every weight and probability in exact mode uses it.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "3", "-2", "1/3", "0.125", "2.5e-3" into an exact rational.
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form (q = 1 is still written, e.g. "2/1").
std::string to_string(const Rational& value);

double to_double(const Rational& value);

/// base^exponent for exponent >= 0 (0^0 = 1).
Rational pow(const Rational& base, unsigned long exponent);

inline bool is_zero(const Rational& value) { return sgn(value) == 0; }

}  // namespace motzkin
