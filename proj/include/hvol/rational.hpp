#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace hvol {

/// Exact rational scalar backed by GMP.
using Rational = mpq_class;

/// p/q in lowest terms. mpq_class(p, q) alone does not reduce.
inline Rational ratio(long p, long q)
{
    Rational r(p, q);
    r.canonicalize();
    return r;
}

/// Parses "p/q", "p" or "-p/q"; the result is canonicalized.
/// Throws Error{Schema} on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Lowest-terms text form: "27", "-4/3".
std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

Rational ipow(const Rational& base, unsigned exponent);
inline double ipow(double base, unsigned exponent)
{
    double result = 1.0;
    for (unsigned i = 0; i < exponent; ++i) result *= base;
    return result;
}

mpz_class floor_z(const Rational& q);
mpz_class ceil_z(const Rational& q);

/// Best rational approximation with denominator <= max_den (continued fractions).
Rational approximate(double x, long max_den);

/// Twelve significant digits, the float format used on every output channel.
std::string format_double(double x);

}  // namespace hvol
