#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace adsp {

// GMP rationals are kept canonical (positive denominator, reduced) by mpq_class.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "-p", "p/q" (q != 0). Whitespace is not accepted.
Rational parse_rational(std::string_view text);

/// Canonical form: "p/q", or "p" when q == 1; sign on the numerator.
std::string to_string(const Rational& r);

}  // namespace adsp
