#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace nestquot {

/// Exact rational scalar. Values are kept canonical: gcd(num, den) = 1 and
/// den > 0, zero is 0/1.
using Rational = mpq_class;
using QVector = std::vector<Rational>;

/// Parses "p", "-p", "p/q". Returns the canonical value; throws
/// std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

/// Number of bits needed for numerator plus denominator; used as a pivot
/// heuristic to limit coefficient growth.
std::size_t bit_size(const Rational& q);

}  // namespace nestquot
