#include "hvol/lattice.hpp"

#include "hvol/parallel.hpp"
#include "hvol/valuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hvol {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr double kCountLimit = 1.8e19;

std::int64_t to_int64(const mpz_class& z, const char* what)
{
    if (!z.fits_slong_p()) fail(ErrorKind::Capacity, std::string(what) + " does not fit in 64 bits");
    return z.get_si();
}

// Integer form of <x, e> < r: <w, e> <= bound with w = D x, bound = D r - 1 (D clears all denominators).
struct IntegerProblem {
    std::vector<std::int64_t> w;
    std::int64_t bound = -1;
};

IntegerProblem integerize(const WeightVector& x, const Rational& r)
{
    mpz_class d = r.get_den();
    for (const auto& c : x) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.get_den_mpz_t());
    IntegerProblem p;
    for (const auto& c : x) {
        Rational s = c * Rational(d);
        p.w.push_back(to_int64(s.get_num(), "scaled weight"));
    }
    Rational rd = r * Rational(d);
    p.bound = to_int64(rd.get_num(), "scaled radius") - 1;
    return p;
}

// sum_{i=0}^{n-1} floor((a*i + b) / m) for a, b >= 0, m > 0.
u128 floor_sum(u128 n, u128 m, u128 a, u128 b)
{
    u128 ans = 0;
    for (;;) {
        if (a >= m) {
            u128 t = n * (n - 1) / 2;
            ans += t * (a / m);
            a %= m;
        }
        if (b >= m) {
            ans += n * (b / m);
            b %= m;
        }
        u128 y_max = a * n + b;
        if (y_max < m) break;
        n = y_max / m;
        b = y_max % m;
        std::swap(m, a);
    }
    return ans;
}

// #{e in Z^k_{>=0} : sum w_i e_i <= bound}; loops over w[0..k-3], closed form for the last two.
u128 simplex_count(std::span<const std::int64_t> w, std::int64_t bound)
{
    if (bound < 0) return 0;
    const std::size_t k = w.size();
    if (k == 0) return 1;
    if (k == 1) return static_cast<u128>(bound / w[0]) + 1;
    if (k == 2) {
        std::int64_t top = bound / w[1];
        std::int64_t base = bound - w[1] * top;
        u128 terms = static_cast<u128>(top) + 1;
        return floor_sum(terms, static_cast<u128>(w[0]), static_cast<u128>(w[1]), static_cast<u128>(base)) + terms;
    }
    u128 total = 0;
    auto rest = w.subspan(1);
    for (std::int64_t e = 0, b = bound; b >= 0; ++e, b -= w[0]) total += simplex_count(rest, b);
    return total;
}

std::uint64_t checked(u128 v)
{
    if (v > std::numeric_limits<std::uint64_t>::max())
        fail(ErrorKind::Capacity, "colength exceeds the 64-bit counter");
    return static_cast<std::uint64_t>(v);
}

std::int64_t floor_div(i128 a, i128 b)
{
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return static_cast<std::int64_t>(q);
}

std::int64_t ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

}  // namespace

std::uint64_t colength_smooth(int n, const WeightVector& x, const Rational& r)
{
    if (n < 1 || static_cast<int>(x.size()) != n) fail(ErrorKind::Domain, "weight length must equal n");
    if (r <= 0) return 0;
    IntegerProblem p = integerize(x, r);

    long double estimate = 1;
    for (int i = 0; i < n; ++i) estimate *= static_cast<long double>(p.bound + 1) / static_cast<long double>(p.w[i]) / (i + 1);
    if (estimate > kCountLimit) fail(ErrorKind::Capacity, "colength exceeds the 64-bit counter");

    std::vector<std::int64_t> w = p.w;
    std::sort(w.begin(), w.end(), std::greater<>());
    if (n <= 2) return checked(simplex_count(w, p.bound));

    // Split the outermost coordinate across workers; the sum is order independent.
    std::size_t slabs = static_cast<std::size_t>(p.bound / w[0]) + 1;
    std::vector<u128> partial(thread_count() + 1, 0);
    std::span<const std::int64_t> rest(w.data() + 1, w.size() - 1);
    parallel_chunks(slabs, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        u128 s = 0;
        for (std::size_t e = begin; e < end; ++e)
            s += simplex_count(rest, p.bound - static_cast<std::int64_t>(e) * w[0]);
        partial[chunk] = s;
    });
    u128 total = 0;
    for (u128 s : partial) total += s;
    return checked(total);
}

std::uint64_t colength_hypersurface(const Hypersurface& model, const WeightVector& x, const Rational& r)
{
    if (static_cast<int>(x.size()) != model.ambient_dim()) fail(ErrorKind::Domain, "weight has the wrong length");
    const int n = model.ambient_dim();
    std::uint64_t outer = colength_smooth(n, x, r);
    Rational shifted = r - weighted_order(x, model.support()).value;
    std::uint64_t inner = shifted > 0 ? colength_smooth(n, x, shifted) : 0;
    return outer - inner;
}

std::uint64_t colength_toric(const ToricCone& model, const WeightVector& x, const Rational& r)
{
    const std::size_t n = static_cast<std::size_t>(model.rank());
    if (x.size() != n) fail(ErrorKind::Domain, "weight has the wrong length");
    for (std::size_t i = 0; i < n; ++i) {
        Rational c(0);
        for (std::size_t j = 0; j < n; ++j) c += model.inverse_generators()[i][j] * x[j];
        if (c <= 0) fail(ErrorKind::InvalidWeight, "sublevel set is unbounded: weight not in the interior of sigma");
    }
    if (r <= 0) return 0;
    IntegerProblem p = integerize(x, r);

    // Bounding box of the simplex with apex 0 and vertices u_j * r / <u_j, x>.
    std::vector<std::int64_t> lo(n, 0), hi(n, 0);
    for (const auto& u : model.dual_rays()) {
        Rational pair(0);
        for (std::size_t k = 0; k < n; ++k) pair += Rational(static_cast<long>(u[k])) * x[k];
        Rational t = r / pair;
        for (std::size_t k = 0; k < n; ++k) {
            Rational coord = t * Rational(static_cast<long>(u[k]));
            lo[k] = std::min(lo[k], to_int64(floor_z(coord), "bounding box"));
            hi[k] = std::max(hi[k], to_int64(ceil_z(coord), "bounding box"));
        }
    }
    long double cells = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) cells *= static_cast<long double>(hi[k] - lo[k] + 1);
    if (cells > 4e10L) fail(ErrorKind::Capacity, "toric enumeration box too large");

    // Constraints a . y >= q: the generators (q = 0) and -w . y >= -bound.
    std::vector<std::vector<std::int64_t>> a;
    std::vector<std::int64_t> q;
    for (const auto& v : model.generators()) a.push_back(v), q.push_back(0);
    std::vector<std::int64_t> neg_w(p.w);
    for (auto& c : neg_w) c = -c;
    a.push_back(neg_w);
    q.push_back(-p.bound);

    const std::size_t last = n - 1;
    auto count_line = [&](const std::vector<std::int64_t>& y) -> u128 {
        std::int64_t tlo = lo[last], thi = hi[last];
        for (std::size_t c = 0; c < a.size() && tlo <= thi; ++c) {
            i128 partial = 0;
            for (std::size_t k = 0; k < last; ++k) partial += static_cast<i128>(a[c][k]) * y[k];
            i128 need = static_cast<i128>(q[c]) - partial;
            std::int64_t coef = a[c][last];
            if (coef > 0) tlo = std::max(tlo, ceil_div(need, coef));
            else if (coef < 0) thi = std::min(thi, floor_div(need, coef));
            else if (need > 0) return 0;
        }
        return tlo <= thi ? static_cast<u128>(thi - tlo + 1) : 0;
    };

    if (n == 1) return checked(count_line({}));

    std::size_t outer = static_cast<std::size_t>(hi[0] - lo[0] + 1);
    std::vector<u128> partial(thread_count() + 1, 0);
    parallel_chunks(outer, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        u128 s = 0;
        std::vector<std::int64_t> y(n, 0);
        for (std::size_t i = begin; i < end; ++i) {
            y[0] = lo[0] + static_cast<std::int64_t>(i);
            for (std::size_t k = 1; k < last; ++k) y[k] = lo[k];
            for (;;) {
                s += count_line(y);
                std::size_t k = 1;
                while (k < last && y[k] == hi[k]) y[k] = lo[k], ++k;
                if (k >= last) break;
                ++y[k];
            }
        }
        partial[chunk] = s;
    });
    u128 total = 0;
    for (u128 s : partial) total += s;
    return checked(total);
}

std::uint64_t colength(const SingularityModel& model, const WeightVector& x, const Rational& r)
{
    check_weight_length(model, x);
    if (auto* h = std::get_if<Hypersurface>(&model)) return colength_hypersurface(*h, x, r);
    if (auto* t = std::get_if<ToricCone>(&model)) return colength_toric(*t, x, r);
    return colength_smooth(std::get<SmoothPoint>(model).dim, x, r);
}

std::vector<Rational> default_radii(const WeightVector& x)
{
    static constexpr long factors[] = {16, 26, 43, 71, 116, 190, 312, 512};
    std::vector<Rational> radii;
    Rational top = x.max();
    for (long f : factors) radii.push_back(Rational(f) * top);
    return radii;
}

ColengthSeries estimate_volume(const SingularityModel& model, const WeightVector& x, std::span<const Rational> radii)
{
    if (radii.empty()) fail(ErrorKind::Domain, "empty radius schedule");
    const int n = intrinsic_dim(model);
    double factorial = 1;
    for (int i = 2; i <= n; ++i) factorial *= i;

    ColengthSeries series;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (radii[i] <= 0 || (i > 0 && radii[i] <= radii[i - 1]))
            fail(ErrorKind::Domain, "radius schedule must be positive and strictly increasing");
        std::uint64_t c = colength(model, x, radii[i]);
        series.radii.push_back(radii[i]);
        series.colengths.push_back(c);
        Rational scaled = Rational(static_cast<unsigned long>(c)) / ipow(radii[i], static_cast<unsigned>(n));
        series.vol_estimates.push_back(factorial * scaled.get_d());
    }
    return series;
}

}  // namespace hvol
