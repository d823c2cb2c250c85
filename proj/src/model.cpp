#include "hvol/model.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace hvol {

int ExponentVector::total_degree() const
{
    return std::accumulate(entries.begin(), entries.end(), 0);
}

SmoothPoint SmoothPoint::make(int dim)
{
    if (dim < 1) fail(ErrorKind::InvalidModel, "smooth point needs dim >= 1");
    return SmoothPoint{dim};
}

Hypersurface Hypersurface::make(std::vector<ExponentVector> support, HypersurfaceOptions options)
{
    if (support.empty()) fail(ErrorKind::InvalidModel, "hypersurface support is empty");
    std::size_t ambient = support.front().size();
    if (ambient < 2) fail(ErrorKind::InvalidModel, "hypersurface needs ambient dimension >= 2");
    int mult = -1;
    std::set<ExponentVector> seen;
    for (const auto& e : support) {
        if (e.size() != ambient) fail(ErrorKind::InvalidModel, "exponent vectors have inconsistent lengths");
        for (int a : e.entries)
            if (a < 0) fail(ErrorKind::InvalidModel, "exponents must be non-negative");
        int d = e.total_degree();
        if (d == 0) fail(ErrorKind::InvalidModel, "constant monomial in support");
        if (!seen.insert(e).second) fail(ErrorKind::InvalidModel, "repeated exponent vector in support");
        mult = mult < 0 ? d : std::min(mult, d);
    }
    if (mult < 2 && !options.allow_smooth_germ)
        fail(ErrorKind::InvalidModel, "multiplicity 1: the germ is smooth, model it as a smooth point");

    Hypersurface h;
    h.ambient_dim_ = static_cast<int>(ambient);
    h.multiplicity_ = mult;
    h.allow_smooth_ = options.allow_smooth_germ;
    h.support_ = std::move(support);
    return h;
}

namespace {

using Matrix = std::vector<std::vector<Rational>>;

std::int64_t gcd_of(const ToricCone::IntVector& v)
{
    std::int64_t g = 0;
    for (auto a : v) g = std::gcd(g, a < 0 ? -a : a);
    return g;
}

// Inverse and |det| by Gauss-Jordan over Q; throws when singular.
Matrix invert(Matrix a, Rational& abs_det)
{
    const std::size_t n = a.size();
    Matrix inv(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    Rational det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) fail(ErrorKind::InvalidModel, "cone generators are linearly dependent");
        if (piv != col) {
            std::swap(a[piv], a[col]);
            std::swap(inv[piv], inv[col]);
            det = -det;
        }
        Rational p = a[col][col];
        det *= p;
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col] == 0) continue;
            Rational f = a[i][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] -= f * a[col][j];
                inv[i][j] -= f * inv[col][j];
            }
        }
    }
    abs_det = abs(det);
    return inv;
}

ToricCone::IntVector primitive_multiple(const std::vector<Rational>& v)
{
    mpz_class l = 1;
    for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    ToricCone::IntVector out;
    out.reserve(v.size());
    for (const auto& q : v) {
        Rational s = q * Rational(l);
        out.push_back(s.get_num().get_si());
    }
    std::int64_t g = gcd_of(out);
    for (auto& a : out) a /= g;
    return out;
}

std::int64_t dot(const ToricCone::IntVector& a, const ToricCone::IntVector& b)
{
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

ToricCone ToricCone::make(std::vector<IntVector> generators, std::vector<Rational> gamma)
{
    if (generators.empty()) fail(ErrorKind::InvalidModel, "toric cone has no generators");
    const std::size_t n = generators.front().size();
    if (n == 0) fail(ErrorKind::InvalidModel, "toric cone of rank 0");
    for (const auto& v : generators) {
        if (v.size() != n) fail(ErrorKind::InvalidModel, "cone generators have inconsistent lengths");
        for (auto a : v)
            if (a > (1 << 20) || a < -(1 << 20)) fail(ErrorKind::InvalidModel, "cone generator entry too large");
        if (gcd_of(v) != 1) fail(ErrorKind::InvalidModel, "cone generators must be primitive lattice vectors");
    }
    if (generators.size() != n)
        fail(ErrorKind::UnsupportedModel, "only simplicial cones (rank many generators) are supported");
    if (gamma.size() != n) fail(ErrorKind::InvalidModel, "gorenstein vector has the wrong length");
    for (const auto& v : generators) {
        Rational pairing(0);
        for (std::size_t i = 0; i < n; ++i) pairing += gamma[i] * Rational(static_cast<long>(v[i]));
        if (pairing != 1)
            fail(ErrorKind::InvalidModel, "Q-Gorenstein condition fails: <gamma, v> = " + to_string(pairing));
    }

    ToricCone c;
    c.rank_ = static_cast<int>(n);
    Matrix vmat(n, std::vector<Rational>(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) vmat[i][j] = Rational(static_cast<long>(generators[j][i]));
    c.inverse_ = invert(vmat, c.index_);

    // Row i of V^{-1} pairs to delta_ij with the generators, so it spans a dual ray.
    for (std::size_t i = 0; i < n; ++i) c.dual_rays_.push_back(primitive_multiple(c.inverse_[i]));

    // Lattice points of {sum l_i u_i : 0 <= l_i < 1}; l_i = <y, v_i> / <u_i, v_i>.
    std::vector<std::int64_t> lo(n, 0), hi(n, 0), scale(n);
    for (std::size_t i = 0; i < n; ++i) {
        scale[i] = dot(c.dual_rays_[i], generators[i]);
        for (std::size_t k = 0; k < n; ++k) {
            std::int64_t a = c.dual_rays_[i][k];
            (a < 0 ? lo[k] : hi[k]) += a;
        }
    }
    long double box = 1;
    for (std::size_t k = 0; k < n; ++k) box *= static_cast<long double>(hi[k] - lo[k] + 1);
    if (box > 5e7L) fail(ErrorKind::Capacity, "fundamental parallelepiped too large to enumerate");

    c.ideal_generators_ = c.dual_rays_;
    IntVector y(lo);
    for (;;) {
        bool inside = std::any_of(y.begin(), y.end(), [](auto a) { return a != 0; });
        for (std::size_t i = 0; i < n && inside; ++i) {
            std::int64_t p = dot(y, generators[i]);
            inside = p >= 0 && p < scale[i];
        }
        if (inside) c.ideal_generators_.push_back(y);
        std::size_t k = 0;
        while (k < n && y[k] == hi[k]) y[k] = lo[k], ++k;
        if (k == n) break;
        ++y[k];
    }
    std::sort(c.ideal_generators_.begin(), c.ideal_generators_.end());
    c.ideal_generators_.erase(std::unique(c.ideal_generators_.begin(), c.ideal_generators_.end()),
                              c.ideal_generators_.end());

    c.generators_ = std::move(generators);
    c.gamma_ = std::move(gamma);
    return c;
}

int intrinsic_dim(const SingularityModel& model)
{
    struct {
        int operator()(const SmoothPoint& s) const { return s.dim; }
        int operator()(const Hypersurface& h) const { return h.x_dim(); }
        int operator()(const ToricCone& t) const { return t.rank(); }
    } visitor;
    return std::visit(visitor, model);
}

int ambient_dim(const SingularityModel& model)
{
    struct {
        int operator()(const SmoothPoint& s) const { return s.dim; }
        int operator()(const Hypersurface& h) const { return h.ambient_dim(); }
        int operator()(const ToricCone& t) const { return t.rank(); }
    } visitor;
    return std::visit(visitor, model);
}

const char* kind_name(const SingularityModel& model)
{
    static constexpr const char* names[] = {"smooth", "hypersurface", "toric"};
    return names[model.index()];
}

}  // namespace hvol
