#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace rankforge {

using Integer = mpz_class;
using Rational = mpq_class;

// Always "num/den", including integers ("3/1").
std::string to_fraction(const Rational& x);

// Accepts "n", "n/d", with optional sign and surrounding whitespace.
Rational parse_rational(std::string_view text);

// n/d in lowest terms (gmpxx's two-argument constructor does not reduce).
Rational ratio(const Integer& n, const Integer& d);

bool is_integer(const Rational& x);

// floor(x) for exact rationals.
Integer floor_of(const Rational& x);

// Fractional part {x} = x - floor(x).
Rational frac(const Rational& x);

}  // namespace rankforge
