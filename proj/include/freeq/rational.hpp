#ifndef FREEQ_RATIONAL_HPP
#define FREEQ_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace freeq {

// GMP keeps mpq_class canonical (lowest terms, positive denominator) after
// every arithmetic operation, but not after construction from a numerator
// and denominator; such values must be canonicalized before use.
using Rational = mpq_class;
using Vector = std::vector<Rational>;

// Parses "p", "p/q", "-p/q". Throws ValidationError on malformed input or a
// zero denominator.
Rational parse_rational(std::string_view text);

// Canonical "p/q" form; integers print without a denominator.
std::string to_string(const Rational& q);

bool is_zero(const Vector& v);

}  // namespace freeq

#endif
