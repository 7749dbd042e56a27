#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ecj {

using Integer = mpz_class;
// mpq_class keeps numerator/denominator coprime with a positive denominator
// as long as every construction from a raw pair goes through make_rational.
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den);

// Parses "123", "-7", "3/4". Throws std::invalid_argument on malformed text
// or a zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace ecj
