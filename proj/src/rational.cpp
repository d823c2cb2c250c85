#include "hvol/rational.hpp"

#include "hvol/error.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>

namespace hvol {

namespace {

bool is_integer_text(std::string_view s)
{
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    text = trim(text);
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!is_integer_text(num) || !is_integer_text(den) || den[0] == '-' || den[0] == '+')
        fail(ErrorKind::Schema, "malformed rational: '" + std::string(text) + "'");
    std::string n(num[0] == '+' ? num.substr(1) : num);
    mpz_class p(n, 10), q(std::string(den), 10);
    if (q == 0) fail(ErrorKind::Schema, "zero denominator in '" + std::string(text) + "'");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& q)
{
    Rational c(q);
    c.canonicalize();
    return c.get_str();
}

Rational ipow(const Rational& base, unsigned exponent)
{
    Rational result(1);
    for (unsigned i = 0; i < exponent; ++i) result *= base;
    return result;
}

mpz_class floor_z(const Rational& q)
{
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

mpz_class ceil_z(const Rational& q)
{
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Rational approximate(double x, long max_den)
{
    // Convergents p_k/q_k of the continued fraction of x; stop before q exceeds max_den.
    if (!std::isfinite(x)) fail(ErrorKind::Domain, "cannot approximate a non-finite value");
    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    Rational rest(x);
    for (int iter = 0; iter < 64; ++iter) {
        mpz_class a = floor_z(rest);
        mpz_class p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        Rational frac = rest - Rational(a);
        if (frac == 0) break;
        rest = 1 / frac;
    }
    if (q1 == 0) return Rational(floor_z(Rational(x)));
    Rational r(p1, q1);
    r.canonicalize();
    return r;
}

std::string format_double(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InvalidModel: return "invalid-model";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::NonKltWeight: return "non-klt-weight";
    case ErrorKind::NonKltModel: return "non-klt-model";
    case ErrorKind::UnsupportedModel: return "unsupported-model";
    case ErrorKind::InvalidWeight: return "invalid-weight";
    case ErrorKind::Capacity: return "capacity";
    case ErrorKind::InvalidCurve: return "invalid-curve";
    case ErrorKind::InternalConsistency: return "internal-consistency";
    case ErrorKind::Schema: return "schema";
    }
    return "unknown";
}

}  // namespace hvol
