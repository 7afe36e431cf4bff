#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace oschar {

/// Arbitrary-precision rational. GMP keeps the value canonical (reduced,
/// positive denominator) after every arithmetic operation, so `==` is exact.
using ExactScalar = mpq_class;
using ExactInt = mpz_class;

ExactScalar rational(long num, long den = 1);

/// base^exp with 0^0 = 1. Negative exponents invert a nonzero base.
ExactScalar pow(const ExactScalar& base, long exp);
ExactInt pow(const ExactInt& base, unsigned long exp);

/// C(a, b), zero outside 0 <= b <= a.
ExactInt binomial(long a, long b);
ExactInt factorial(long n);

/// Accepts "p", "p/q", "-p/q" and finite decimals such as "2.5" or "1e-3";
/// decimals are converted exactly. Throws std::invalid_argument otherwise.
ExactScalar parse_rational(std::string_view text);

/// "num/den" (denominator always printed).
std::string to_fraction_string(const ExactScalar& value);

double to_double(const ExactScalar& value);

}  // namespace oschar
