#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace flagbound {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q", "p", or a finite decimal such as "-0.164" exactly.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string format_rational(const Rational& value);

/// Fixed-point decimal rendering truncated toward zero; for reports only.
std::string format_decimal(const Rational& value, int digits = 10);

Integer binomial(int n, int k);

/// Best rational approximation with denominator at most `max_denominator`
/// (continued fractions with a final semiconvergent check).
Rational best_rational(double value, std::uint64_t max_denominator);

}  // namespace flagbound
