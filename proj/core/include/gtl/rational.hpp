#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace gtl {

// All coefficients are exact. GMP rationals are canonicalized on every
// arithmetic operation, so equality is structural.
using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "p", "-p", "p/q". Throws std::invalid_argument on anything else
// or a zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

}  // namespace gtl
