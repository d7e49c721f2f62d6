#ifndef SVA_RATIONAL_HPP
#define SVA_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

#include "sva/errors.hpp"

namespace sva {

using Integer = mpz_class;
// mpq_class keeps values canonical (lowest terms, positive denominator) as
// long as raw num/den are not written directly; we only construct through
// the helpers below.
using Rational = mpq_class;

// Parses "p", "p/q", or a plain decimal like "-12.0625" / "3e-4" into the
// exact rational the string denotes.
Rational parse_rational(const std::string& text);

Rational make_rational(const Integer& num, const Integer& den);

inline int sign_of(const Rational& q) { return sgn(q); }

// floor(num/den) as an exact integer.
Integer floor_div(const Rational& q);

std::string to_string(const Rational& q);

} // namespace sva

#endif
