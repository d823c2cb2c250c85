#include "hvol/fujita.hpp"

#include "hvol/error.hpp"

namespace hvol {

namespace {

Rational power(const Rational& base, int exponent)
{
    if (exponent >= 0) return ipow(base, static_cast<unsigned>(exponent));
    return 1 / ipow(base, static_cast<unsigned>(-exponent));
}

// p(x) = sum_k a_k ((u - c0)/c1)^k, re-expanded in u.
std::vector<Rational> substitute(const Polynomial& p, const Rational& c0, const Rational& c1)
{
    std::vector<Rational> q;
    std::vector<Rational> term{Rational(1)};  // ((u - c0)/c1)^k
    for (const auto& a : p.coefficients) {
        if (q.size() < term.size()) q.resize(term.size());
        for (std::size_t j = 0; j < term.size(); ++j) q[j] += a * term[j];
        std::vector<Rational> next(term.size() + 1);
        for (std::size_t j = 0; j < term.size(); ++j) {
            next[j + 1] += term[j] / c1;
            next[j] -= term[j] * c0 / c1;
        }
        term = std::move(next);
    }
    return q;
}

// int_a^b p(x) (c0 + c1 x)^{-m} dx, exact.
Rational integrate(const Polynomial& p, const Rational& c0, const Rational& c1, int m, const Rational& a,
                   const Rational& b)
{
    Rational ua = c0 + c1 * a, ub = c0 + c1 * b;
    if (ua <= 0 || ub <= 0) fail(ErrorKind::Domain, "denominator vanishes on the integration interval");
    if (c1 == 0) {
        Rational total = 0;
        for (std::size_t k = 0; k < p.coefficients.size(); ++k) {
            int e = static_cast<int>(k) + 1;
            total += p.coefficients[k] * (power(b, e) - power(a, e)) / e;
        }
        return total / power(c0, m);
    }
    auto q = substitute(p, c0, c1);
    Rational total = 0;
    for (std::size_t j = 0; j < q.size(); ++j) {
        if (q[j] == 0) continue;
        int e = static_cast<int>(j) - m + 1;
        if (e == 0) fail(ErrorKind::InvalidCurve, "piece degree too high: logarithmic term");
        total += q[j] * (power(ub, e) - power(ua, e)) / e;
    }
    return total / c1;
}

Rational sum_pieces(const VolumeCurve& curve, const Rational& c0, const Rational& c1, int m, bool derivative)
{
    Rational total = 0;
    auto bp = curve.breakpoints();
    auto pieces = curve.pieces();
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        Polynomial p = derivative ? pieces[i].derivative() : pieces[i];
        total += integrate(p, c0, c1, m, bp[i], bp[i + 1]);
    }
    return total;
}

Polynomial binomial_power(const Rational& c, int k)  // (1 - c x)^k
{
    Polynomial p{{Rational(1)}};
    for (int i = 0; i < k; ++i) {
        std::vector<Rational> next(p.coefficients.size() + 1);
        for (std::size_t j = 0; j < p.coefficients.size(); ++j) {
            next[j] += p.coefficients[j];
            next[j + 1] -= c * p.coefficients[j];
        }
        p.coefficients = std::move(next);
    }
    return p;
}

Polynomial poly(std::initializer_list<long> coefficients)
{
    Polynomial p;
    for (long c : coefficients) p.coefficients.emplace_back(c);
    return p;
}

}  // namespace

Rational Polynomial::operator()(const Rational& x) const
{
    Rational result = 0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) result = result * x + *it;
    return result;
}

Polynomial Polynomial::derivative() const
{
    Polynomial d;
    for (std::size_t k = 1; k < coefficients.size(); ++k)
        d.coefficients.push_back(coefficients[k] * static_cast<long>(k));
    return d;
}

int Polynomial::degree() const
{
    for (std::size_t k = coefficients.size(); k-- > 0;)
        if (coefficients[k] != 0) return static_cast<int>(k);
    return -1;
}

VolumeCurve VolumeCurve::make(int base_dim, std::vector<Rational> breakpoints, std::vector<Polynomial> pieces)
{
    if (base_dim < 1) fail(ErrorKind::InvalidCurve, "base dimension must be at least 1");
    if (breakpoints.size() < 2 || pieces.size() != breakpoints.size() - 1)
        fail(ErrorKind::InvalidCurve, "need N + 1 breakpoints for N pieces");
    if (breakpoints.front() != 0) fail(ErrorKind::InvalidCurve, "first breakpoint must be 0");
    for (std::size_t i = 1; i < breakpoints.size(); ++i)
        if (!(breakpoints[i - 1] < breakpoints[i])) fail(ErrorKind::InvalidCurve, "breakpoints must increase");
    for (const auto& p : pieces)
        if (p.degree() > base_dim) fail(ErrorKind::InvalidCurve, "piece degree exceeds the base dimension");
    for (std::size_t i = 0; i + 1 < pieces.size(); ++i)
        if (pieces[i](breakpoints[i + 1]) != pieces[i + 1](breakpoints[i + 1]))
            fail(ErrorKind::InvalidCurve, "curve is discontinuous at " + to_string(breakpoints[i + 1]));
    if (pieces.back()(breakpoints.back()) != 0) fail(ErrorKind::InvalidCurve, "curve must vanish at tau");
    if (!(pieces.front()(0) > 0)) fail(ErrorKind::InvalidCurve, "volume at 0 must be positive");

    constexpr int samples = 64;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        auto d = pieces[i].derivative();
        for (int s = 0; s <= samples; ++s) {
            Rational x = breakpoints[i] + (breakpoints[i + 1] - breakpoints[i]) * ratio(s, samples);
            if (pieces[i](x) < 0) fail(ErrorKind::InvalidCurve, "curve is negative at " + to_string(x));
            if (d(x) > 0) fail(ErrorKind::InvalidCurve, "curve increases at " + to_string(x));
        }
    }

    VolumeCurve c;
    c.base_dim_ = base_dim;
    c.vol_at_zero_ = pieces.front()(0);
    c.breakpoints_ = std::move(breakpoints);
    c.pieces_ = std::move(pieces);
    return c;
}

Rational VolumeCurve::operator()(const Rational& x) const
{
    if (x < 0) fail(ErrorKind::Domain, "volume curve evaluated at negative x");
    for (std::size_t i = 0; i < pieces_.size(); ++i)
        if (x <= breakpoints_[i + 1]) return pieces_[i](x);
    return 0;
}

ConeModel ConeModel::make(Rational r, VolumeCurve curve)
{
    if (!(r > 0)) fail(ErrorKind::InvalidCurve, "r must be positive");
    ConeModel c;
    c.r_ = std::move(r);
    c.curve_ = std::move(curve);
    return c;
}

Rational log_discrepancy_w_alpha(const ConeModel& cone, const Rational& alpha)
{
    return alpha * cone.r() + cone.r() + 1;
}

Rational vol_w_alpha(const ConeModel& cone, const Rational& alpha)
{
    if (alpha < 0) fail(ErrorKind::Domain, "alpha must be non-negative");
    const int n = cone.dim();
    const auto& c = cone.curve();
    return c.vol_at_zero() / power(alpha + 1, n) - n * sum_pieces(c, alpha + 1, Rational(1), n + 1, false);
}

Rational phi(const ConeModel& cone, const Rational& beta)
{
    const int n = cone.dim();
    const auto& c = cone.curve();
    if (!(1 + beta > 0) || !(1 + beta * (1 + c.tau()) > 0)) fail(ErrorKind::Domain, "beta out of range");
    Rational a = cone.r() + beta * (cone.r() + 1);
    Rational vol = c.vol_at_zero() / power(1 + beta, n);
    if (beta != 0) vol -= n * beta * sum_pieces(c, 1 + beta, beta, n + 1, false);
    return power(a, n) * vol;
}

Rational phi_infinity(const ConeModel& cone)
{
    return power(cone.r() + 1, cone.dim()) * vol_w_alpha(cone, 0);
}

Rational eta(const ConeModel& cone)
{
    const int n = cone.dim();
    const auto& c = cone.curve();
    return power(cone.r(), n - 1) * c.vol_at_zero() - power(cone.r(), n) * sum_pieces(c, 1, 0, 0, false);
}

Rational phi_prime_difference(const ConeModel& cone, const Rational& h)
{
    return (phi(cone, h) - phi(cone, -h)) / (2 * h);
}

Rational phi_prime_zero(const ConeModel& cone)
{
    Rational expected = cone.dim() * eta(cone);
    // One Richardson step removes the h^2 truncation term of the central difference.
    const Rational h = ratio(1, 100000);
    Rational fd = (4 * phi_prime_difference(cone, h / 2) - phi_prime_difference(cone, h)) / 3;
    Rational err = abs(fd - expected);
    bool ok = expected == 0 ? err <= ratio(1, 1000000000) : err <= abs(expected) / 1000000;
    if (!ok)
        fail(ErrorKind::InternalConsistency, "phi'(0) = " + format_double(expected.get_d()) +
                                                 " but the central difference gives " + format_double(fd.get_d()));
    return expected;
}

Rational f_of_t(const ConeModel& cone, const Rational& t)
{
    if (t < 0 || t > 1) fail(ErrorKind::Domain, "t must lie in [0, 1]");
    if (t == 1) return phi_infinity(cone);
    return phi(cone, t * cone.r() / ((1 - t) * (cone.r() + 1)));
}

Rational f_stieltjes(const ConeModel& cone, const Rational& t)
{
    if (t < 0 || t > 1) fail(ErrorKind::Domain, "t must lie in [0, 1]");
    const int n = cone.dim();
    const Rational& r = cone.r();
    Rational integral = -sum_pieces(cone.curve(), r + 1 - t, r * t, n, true);
    return power(r, n) * power(r + 1, n) * integral;
}

ConvexityReport convexity_check(const ConeModel& cone, int points)
{
    if (points < 3) fail(ErrorKind::Domain, "convexity grid needs at least 3 points");
    ConvexityReport report;
    for (int i = 0; i < points; ++i) report.values.push_back(f_of_t(cone, ratio(i, points - 1)));
    for (int i = 1; i + 1 < points; ++i) {
        Rational d = report.values[i - 1] - 2 * report.values[i] + report.values[i + 1];
        if (i == 1 || d < report.min_second_difference) report.min_second_difference = d;
    }
    report.convex = report.min_second_difference >= -ratio(1, 1000000000);
    return report;
}

std::optional<Rational> find_phi_decrease(const ConeModel& cone)
{
    Rational base = phi(cone, 0);
    for (int k = 1; k <= 12; ++k) {
        Rational beta = power(Rational(10), -k);
        if (phi(cone, beta) < base) return beta;
    }
    return std::nullopt;
}

ConeModel projective_cone(int n)
{
    if (n < 2) fail(ErrorKind::Domain, "cone dimension must be at least 2");
    auto curve = VolumeCurve::make(n - 1, {Rational(0), Rational(1)}, {binomial_power(1, n - 1)});
    return ConeModel::make(n, std::move(curve));
}

std::vector<NamedCone> fujita_catalog()
{
    std::vector<NamedCone> out;
    for (int n = 2; n <= 5; ++n) out.push_back({"projective-n" + std::to_string(n), projective_cone(n)});
    for (int n = 2; n <= 4; ++n) {
        auto steep = VolumeCurve::make(n - 1, {Rational(0), ratio(1, 2)}, {binomial_power(2, n - 1)});
        out.push_back({"steep-n" + std::to_string(n), ConeModel::make(n, std::move(steep))});
        auto shallow = VolumeCurve::make(n - 1, {Rational(0), Rational(2)}, {binomial_power(ratio(1, 2), n - 1)});
        out.push_back({"shallow-n" + std::to_string(n), ConeModel::make(n, std::move(shallow))});
    }
    out.push_back({"blowup-exceptional",
                   ConeModel::make(1, VolumeCurve::make(2, {Rational(0), Rational(2)}, {poly({8, -2, -1})}))});
    out.push_back({"blowup-line", ConeModel::make(1, VolumeCurve::make(2, {Rational(0), Rational(1), Rational(3)},
                                                                       {poly({8, -4}), poly({9, -6, 1})}))});
    return out;
}

}  // namespace hvol
