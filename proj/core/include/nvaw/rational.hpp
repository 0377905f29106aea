#pragma once
// Exact rational scalars backed by GMP.

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace nvaw {

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
using ExactScalar = mpq_class;

ExactScalar make_scalar(long numerator, long denominator = 1);

/// Parses "p/q" or "p" (optional leading sign). Throws std::invalid_argument on malformed input
/// or a zero denominator.
ExactScalar parse_scalar(std::string_view text);

std::string to_string(const ExactScalar& value);

/// Generalized binomial coefficient C(n, i) for any integer n and i >= 0.
ExactScalar binomial(long n, long i);

}  // namespace nvaw
