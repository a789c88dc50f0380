#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace cyclic
{
    /// Arbitrary-precision rational, always canonical (gcd 1, positive denominator).
    using Rational = mpq_class;

    /// Parses "p/q" or "p" (optionally signed). Throws std::invalid_argument.
    auto parse_rational(std::string_view text) -> Rational;

    /// Renders as "p/q", or "p" when the denominator is one.
    auto to_string(const Rational & q) -> std::string;

    /// Decimal approximation with the given number of fractional digits.
    auto to_decimal(const Rational & q, int digits = 6) -> std::string;

    inline auto make_rational(long num, long den = 1) -> Rational
    {
        Rational q(num, den);
        q.canonicalize();
        return q;
    }
}
