#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace polyskel {

/// Exact rational, always kept in lowest terms with a positive denominator.
using Rational = mpq_class;
using BigInt = mpz_class;

Rational make_rational(std::int64_t num, std::int64_t den = 1);
/// num / den for unsigned 64-bit operands; den > 0.
Rational make_ratio(std::uint64_t num, std::uint64_t den);

/// Accepts "a/b", integers, and plain decimals ("0.25", "-1.5", "3e-2").
Rational parse_rational(std::string_view text);

/// "a/b", or "a" for integral values.
std::string to_string(const Rational& q);

double to_double(const Rational& q);

/// q^k for k >= 0.
Rational pow(const Rational& q, unsigned k);

}  // namespace polyskel
