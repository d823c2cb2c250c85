#include "hvol/optimizer.hpp"

#include "hvol/nelder_mead.hpp"
#include "hvol/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace hvol {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTieTolerance = 1e-9;      // relative, between candidate values
constexpr double kSameCoordinate = 1e-6;    // lexicographic tie-break resolution
constexpr double kSnapTolerance = 1e-9;
constexpr double kResidualThreshold = 1e-7;
constexpr double kFiniteStep = 1e-5;
constexpr long kSnapDenominator = 1000;

std::uint64_t splitmix(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stage, std::uint64_t face, std::uint64_t start)
{
    return splitmix(splitmix(splitmix(splitmix(seed) ^ stage) ^ face) ^ start);
}

// Coordinates y carry multiplicities: y_j stands for sizes[j] equal entries of the
// full weight. The full problem has all sizes 1.
struct Problem {
    const SingularityModel* model = nullptr;
    int dim = 0;
    std::vector<int> sizes;
    std::vector<std::vector<long>> support;  // in y coordinates; empty unless hypersurface
    std::vector<std::size_t> class_of;       // full index -> y index

    std::size_t size() const { return sizes.size(); }

    std::vector<double> expand(std::span<const double> y) const
    {
        std::vector<double> x(class_of.size());
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = y[class_of[i]];
        return x;
    }

    double weighted_sum(std::span<const double> y) const
    {
        double s = 0;
        for (std::size_t j = 0; j < y.size(); ++j) s += sizes[j] * y[j];
        return s;
    }

    double pairing(std::span<const double> y, std::size_t m) const
    {
        double s = 0;
        for (std::size_t j = 0; j < y.size(); ++j)
            if (support[m][j] != 0) s += support[m][j] * y[j];
        return s;
    }

    double order(std::span<const double> y) const
    {
        double v = kInf;
        for (std::size_t m = 0; m < support.size(); ++m) v = std::min(v, pairing(y, m));
        return v;
    }

    double log_discrepancy(std::span<const double> y) const
    {
        if (auto* t = std::get_if<ToricCone>(model)) {
            double a = 0;
            auto x = expand(y);
            for (std::size_t i = 0; i < x.size(); ++i) a += t->gamma()[i].get_d() * x[i];
            return a;
        }
        double s = weighted_sum(y);
        return support.empty() ? s : s - order(y);
    }

    double log_volume(std::span<const double> y, double v) const
    {
        if (auto* t = std::get_if<ToricCone>(model)) {
            auto x = expand(y);
            double lv = -std::log(t->index().get_d());
            for (std::size_t i = 0; i < x.size(); ++i) {
                double c = 0;
                for (std::size_t j = 0; j < x.size(); ++j) c += t->inverse_generators()[i][j].get_d() * x[j];
                if (!(c > 0)) return kInf;
                lv -= std::log(c);
            }
            return lv;
        }
        double lv = support.empty() ? 0.0 : std::log(v);
        for (std::size_t j = 0; j < y.size(); ++j) lv -= sizes[j] * std::log(y[j]);
        return lv;
    }

    // log hvol; +inf outside the klt region or the positive cone.
    double log_hvol(std::span<const double> y) const
    {
        for (double c : y)
            if (!(c > 0) || !std::isfinite(c)) return kInf;
        double v = support.empty() ? 0.0 : order(y);
        double a = std::holds_alternative<ToricCone>(*model) ? log_discrepancy(y) : weighted_sum(y) - v;
        if (!(a > 0)) return kInf;
        double lv = log_volume(y, v);
        if (!std::isfinite(lv)) return kInf;
        return dim * std::log(a) + lv;
    }

    // log of the smooth branch through monomial m (toric and smooth: log hvol itself).
    double log_branch(std::span<const double> y, std::optional<std::size_t> m) const
    {
        if (!m) return log_hvol(y);
        for (double c : y)
            if (!(c > 0)) return kInf;
        double v = pairing(y, *m);
        double a = weighted_sum(y) - v;
        if (!(a > 0) || !(v > 0)) return kInf;
        return dim * std::log(a) + log_volume(y, v);
    }

    std::vector<std::size_t> active_at(std::span<const double> y, double rel) const
    {
        std::vector<std::size_t> out;
        double v = order(y);
        for (std::size_t m = 0; m < support.size(); ++m)
            if (pairing(y, m) <= v * (1 + rel)) out.push_back(m);
        return out;
    }
};

// Monomials of `members` held equal: y_pivot = dependence * y_free, and the last
// free coordinate fixed to 1 (scale invariance). Parameters are log y_free[0..F-2].
struct Face {
    std::vector<std::size_t> members;
    std::optional<std::size_t> branch;  // representative monomial of the branch
    std::vector<std::size_t> free;
    std::vector<std::size_t> pivots;
    std::vector<std::vector<double>> dependence;  // per pivot, coefficient per free coordinate
    bool empty = false;

    std::size_t params() const { return free.empty() ? 0 : free.size() - 1; }

    std::optional<std::vector<double>> point(const Problem& p, std::span<const double> u) const
    {
        std::vector<double> y(p.size(), 0.0);
        for (std::size_t k = 0; k < free.size(); ++k) y[free[k]] = k + 1 < free.size() ? std::exp(u[k]) : 1.0;
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            double s = 0;
            for (std::size_t k = 0; k < free.size(); ++k) s += dependence[r][k] * y[free[k]];
            if (!(s > 0)) return std::nullopt;
            y[pivots[r]] = s;
        }
        return y;
    }

    std::vector<double> params_of(std::span<const double> y) const
    {
        std::vector<double> u(params());
        double scale = y[free.back()];
        for (std::size_t k = 0; k < u.size(); ++k) u[k] = std::log(y[free[k]] / scale);
        return u;
    }
};

Face make_face(const Problem& p, std::vector<std::size_t> members)
{
    Face f;
    f.members = members;
    if (!members.empty()) f.branch = members.front();
    const std::size_t m = p.size();
    // Exact RREF of the rows e_s - e_{s0}.
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 1; i < members.size(); ++i) {
        std::vector<Rational> row(m);
        for (std::size_t j = 0; j < m; ++j)
            row[j] = Rational(p.support[members[i]][j] - p.support[members[0]][j]);
        rows.push_back(std::move(row));
    }
    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        Rational lead = rows[rank][col];
        for (auto& c : rows[rank]) c /= lead;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            Rational factor = rows[r][col];
            for (std::size_t j = 0; j < m; ++j) rows[r][j] -= factor * rows[rank][j];
        }
        pivot_cols.push_back(col);
        ++rank;
    }
    std::vector<bool> is_pivot(m, false);
    for (auto c : pivot_cols) is_pivot[c] = true;
    for (std::size_t j = 0; j < m; ++j)
        if (!is_pivot[j]) f.free.push_back(j);
    f.pivots = pivot_cols;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) {
        std::vector<double> dep;
        for (auto j : f.free) dep.push_back(-rows[r][j].get_d());
        f.dependence.push_back(std::move(dep));
    }
    f.empty = f.free.empty();
    return f;
}

struct Candidate {
    std::vector<double> y;  // problem coordinates
    double log_value = kInf;
    bool converged = false;
};

std::vector<double> unit_normalized(std::vector<double> x)
{
    double m = *std::max_element(x.begin(), x.end());
    for (auto& c : x) c /= m;
    return x;
}

bool lex_less(const std::vector<double>& a, const std::vector<double>& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > kSameCoordinate) return a[i] < b[i];
    return false;
}

// A starting point for the face: log-uniform parameters, inside {A >= 0.05 sum x} when possible.
std::optional<std::vector<double>> sample_start(const Problem& p, const Face& f, std::mt19937_64& rng)
{
    std::normal_distribution<double> normal(0.0, 1.0);
    std::optional<std::vector<double>> fallback;
    for (int attempt = 0; attempt < 400; ++attempt) {
        std::vector<double> u(f.params());
        for (auto& c : u) c = normal(rng);
        auto y = f.point(p, u);
        if (!y || !std::isfinite(p.log_hvol(*y))) continue;
        if (p.log_discrepancy(*y) >= 0.05 * p.weighted_sum(*y)) return u;
        if (!fallback) fallback = u;
    }
    return fallback;
}

std::vector<double> gradient(const std::function<double(std::span<const double>)>& g, std::vector<double> u)
{
    std::vector<double> grad(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) {
        double keep = u[k];
        u[k] = keep + kFiniteStep;
        double up = g(u);
        u[k] = keep - kFiniteStep;
        double down = g(u);
        u[k] = keep;
        grad[k] = (up - down) / (2 * kFiniteStep);
    }
    return grad;
}

double max_abs(std::span<const double> v)
{
    double m = 0;
    for (double c : v) m = std::max(m, std::abs(c));
    return std::isfinite(m) ? m : kInf;
}

// Newton iterations on the smooth branch of the face, accepted only when the true
// objective does not increase.
std::vector<double> polish(const Problem& p, const Face& f, std::vector<double> u)
{
    const std::size_t n = u.size();
    if (n == 0) return u;
    auto branch = [&](std::span<const double> v) {
        auto y = f.point(p, v);
        return y ? p.log_branch(*y, f.branch) : kInf;
    };
    auto truth = [&](std::span<const double> v) {
        auto y = f.point(p, v);
        return y ? p.log_hvol(*y) : kInf;
    };
    double current = truth(u);
    for (int iter = 0; iter < 40; ++iter) {
        auto g = gradient(branch, u);
        double gnorm = max_abs(g);
        if (!std::isfinite(gnorm) || gnorm < 1e-13) break;

        const double h = 1e-4;
        std::vector<std::vector<double>> hess(n, std::vector<double>(n));
        for (std::size_t i = 0; i < n; ++i) {
            auto ui = u;
            ui[i] += h;
            auto gp = gradient(branch, ui);
            ui[i] -= 2 * h;
            auto gm = gradient(branch, ui);
            for (std::size_t j = 0; j < n; ++j) hess[i][j] = (gp[j] - gm[j]) / (2 * h);
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) hess[i][j] = hess[j][i] = 0.5 * (hess[i][j] + hess[j][i]);

        // Cholesky; fall back to a scaled gradient step if not positive definite.
        std::vector<double> step(n);
        std::vector<std::vector<double>> l(n, std::vector<double>(n, 0.0));
        bool spd = true;
        for (std::size_t i = 0; i < n && spd; ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                double s = hess[i][j];
                for (std::size_t k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
                if (i == j) {
                    if (!(s > 1e-14)) spd = false;
                    else l[i][i] = std::sqrt(s);
                } else {
                    l[i][j] = s / l[j][j];
                }
            }
        }
        if (spd) {
            std::vector<double> z(n);
            for (std::size_t i = 0; i < n; ++i) {
                double s = -g[i];
                for (std::size_t k = 0; k < i; ++k) s -= l[i][k] * z[k];
                z[i] = s / l[i][i];
            }
            for (std::size_t i = n; i-- > 0;) {
                double s = z[i];
                for (std::size_t k = i + 1; k < n; ++k) s -= l[k][i] * step[k];
                step[i] = s / l[i][i];
            }
        } else {
            for (std::size_t i = 0; i < n; ++i) step[i] = -1e-2 * g[i];
        }

        bool accepted = false;
        for (double t = 1.0; t > 1e-10; t *= 0.5) {
            std::vector<double> trial(n);
            for (std::size_t i = 0; i < n; ++i) trial[i] = u[i] + t * step[i];
            double v = truth(trial);
            // Near the optimum value changes drop below rounding; a smaller gradient decides.
            bool flat = v <= current + 1e-14 * std::max(1.0, std::abs(current)) &&
                        max_abs(gradient(branch, trial)) < gnorm;
            if (v <= current || flat) {
                u = std::move(trial);
                current = v;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
    }
    return u;
}

// Polishes y inside the cell of nearly active monomials, for a few closeness thresholds.
std::pair<std::vector<double>, double> refine(const Problem& p, std::vector<double> y, double log_value)
{
    if (p.support.empty()) return {y, log_value};
    for (double rel : {1e-3, 1e-5, 1e-7, 1e-9}) {
        auto active = p.active_at(y, rel);
        Face cell = make_face(p, active.size() >= 2 ? active : std::vector<std::size_t>{});
        if (active.size() == 1) cell.branch = active.front();
        if (cell.empty) continue;
        auto u = cell.params_of(y);
        if (!cell.point(p, u)) continue;
        auto refined = cell.point(p, polish(p, cell, u));
        if (!refined) continue;
        double v = p.log_hvol(*refined);
        if (v < log_value) y = *refined, log_value = v;
    }
    return {y, log_value};
}

struct FaceSearch {
    Candidate best;
    int starts = 0;
};

FaceSearch search_face(const Problem& p, const Face& f, int starts, std::uint64_t seed, std::uint64_t stage,
                       std::uint64_t face_id, const MinimizeOptions& options)
{
    FaceSearch out;
    if (f.empty) return out;
    auto objective = [&](std::span<const double> u) {
        auto y = f.point(p, u);
        return y ? p.log_hvol(*y) : kInf;
    };
    if (f.params() == 0) {
        auto y = f.point(p, {});
        if (y && std::isfinite(p.log_hvol(*y))) out.best = {*y, p.log_hvol(*y), true};
        out.starts = 1;
        return out;
    }
    NelderMeadOptions nm;
    nm.x_tolerance = options.tolerance;
    for (int s = 0; s < starts; ++s) {
        std::mt19937_64 rng(stream_seed(seed, stage, face_id, static_cast<std::uint64_t>(s)));
        auto u0 = sample_start(p, f, rng);
        if (!u0) continue;
        ++out.starts;
        auto r = nelder_mead(objective, *u0, nm);
        if (!std::isfinite(r.value)) continue;
        if (r.value < out.best.log_value || (r.value == out.best.log_value && !out.best.converged)) {
            auto y = f.point(p, r.x);
            out.best = {*y, r.value, r.converged};
        }
    }
    if (std::isfinite(out.best.log_value)) {
        auto u = polish(p, f, f.params_of(out.best.y));
        auto y = f.point(p, u);
        if (y) {
            double v = p.log_hvol(*y);
            if (v <= out.best.log_value) out.best.y = *y, out.best.log_value = v;
        }
        std::tie(out.best.y, out.best.log_value) = refine(p, out.best.y, out.best.log_value);
    }
    return out;
}

Problem full_problem(const SingularityModel& model)
{
    Problem p;
    p.model = &model;
    p.dim = intrinsic_dim(model);
    std::size_t n = static_cast<std::size_t>(ambient_dim(model));
    p.sizes.assign(n, 1);
    p.class_of.resize(n);
    std::iota(p.class_of.begin(), p.class_of.end(), 0);
    if (auto* h = std::get_if<Hypersurface>(&model))
        for (const auto& e : h->support()) p.support.emplace_back(e.entries.begin(), e.entries.end());
    return p;
}

Problem reduced_problem(const SingularityModel& model)
{
    Problem p = full_problem(model);
    std::vector<std::vector<std::size_t>> classes;
    if (auto* h = std::get_if<Hypersurface>(&model)) classes = symmetrize(*h);
    else if (std::holds_alternative<SmoothPoint>(model)) {
        classes.emplace_back(p.class_of.size());
        std::iota(classes[0].begin(), classes[0].end(), 0);
    } else
        return p;

    Problem r;
    r.model = &model;
    r.dim = p.dim;
    r.class_of.resize(p.class_of.size());
    for (std::size_t c = 0; c < classes.size(); ++c) {
        r.sizes.push_back(static_cast<int>(classes[c].size()));
        for (auto i : classes[c]) r.class_of[i] = c;
    }
    std::set<std::vector<long>> seen;
    for (const auto& e : p.support) {
        std::vector<long> red(classes.size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) red[r.class_of[i]] += e[i];
        if (seen.insert(red).second) r.support.push_back(red);
    }
    return r;
}

std::vector<std::vector<std::size_t>> face_members(std::size_t support_size)
{
    std::vector<std::vector<std::size_t>> out;
    out.emplace_back();  // unconstrained
    if (support_size < 2) return out;
    std::size_t limit = std::min<std::size_t>(support_size, 12);
    for (std::uint32_t mask = 1; mask < (1u << limit); ++mask) {
        if (std::popcount(mask) < 2) continue;
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < limit; ++i)
            if (mask & (1u << i)) members.push_back(i);
        out.push_back(std::move(members));
    }
    return out;
}

Face active_face(const Problem& p, std::span<const double> y)
{
    if (p.support.empty()) return make_face(p, {});
    auto active = p.active_at(y, 1e-9);
    Face f = make_face(p, active.size() >= 2 ? active : std::vector<std::size_t>{});
    if (active.size() == 1) f.branch = active.front();
    return f;
}

double residual_at(const Problem& p, const Face& f, std::span<const double> y)
{
    if (f.params() == 0) return 0.0;
    auto branch = [&](std::span<const double> v) {
        auto pt = f.point(p, v);
        return pt ? p.log_branch(*pt, f.branch) : kInf;
    };
    double r = 0;
    for (double c : gradient(branch, f.params_of(y))) r = std::max(r, std::abs(c));
    return std::isfinite(r) ? r : kInf;
}

void check_klt_region(const SingularityModel& model)
{
    auto* h = std::get_if<Hypersurface>(&model);
    if (!h) return;
    // A = max_e <x, 1 - e> is positive somewhere iff some monomial misses some variable.
    for (const auto& e : h->support())
        for (int a : e.entries)
            if (a == 0) return;
    fail(ErrorKind::NonKltModel, "every monomial involves every variable: sum x - v_x(f) <= 0 for all weights");
}

}  // namespace

const char* to_string(MinimizeStatus s)
{
    switch (s) {
    case MinimizeStatus::Converged: return "converged";
    case MinimizeStatus::BoundarySuspect: return "boundary-suspect";
    case MinimizeStatus::MaxIter: return "max-iter";
    }
    return "?";
}

std::vector<std::vector<std::size_t>> symmetrize(const Hypersurface& model)
{
    const std::size_t n = static_cast<std::size_t>(model.ambient_dim());
    std::set<ExponentVector> support(model.support().begin(), model.support().end());
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            bool preserved = true;
            for (const auto& e : support) {
                ExponentVector swapped = e;
                std::swap(swapped.entries[i], swapped.entries[j]);
                if (!support.count(swapped)) {
                    preserved = false;
                    break;
                }
            }
            if (preserved) parent[find(j)] = find(i);
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [root, members] : groups) out.push_back(members);
    std::sort(out.begin(), out.end());
    return out;
}

template <class T>
T evaluate_branch(const Hypersurface& model, const BasicWeight<T>& x, const ExponentVector& active)
{
    if (static_cast<int>(x.size()) != model.ambient_dim() || active.size() != x.size())
        fail(ErrorKind::Domain, "weight or monomial has the wrong length");
    T v = 0;
    for (std::size_t i = 0; i < x.size(); ++i) v += T(active[i]) * x[i];
    T a = x.sum() - v;
    return T(ipow(a, static_cast<unsigned>(model.x_dim())) * v / x.product());
}

template Rational evaluate_branch<Rational>(const Hypersurface&, const WeightVector&, const ExponentVector&);
template double evaluate_branch<double>(const Hypersurface&, const RealWeight&, const ExponentVector&);

MinimizationResult minimize_hvol(const SingularityModel& model, const MinimizeOptions& options)
{
    check_klt_region(model);
    const Problem full = full_problem(model);
    const Problem reduced = reduced_problem(model);
    const int face_starts = std::max(2, options.starts / 4);

    MinimizationResult result;

    // (a) the cells of the symmetric problem: every set of monomials held equal.
    auto members = face_members(reduced.support.size());
    std::vector<Face> faces;
    for (auto& m : members) faces.push_back(make_face(reduced, m));
    std::vector<FaceSearch> face_results(faces.size());
    parallel_chunks(faces.size(), [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            face_results[i] = search_face(reduced, faces[i], face_starts, options.seed, 1, i, options);
    });

    struct Entry {
        std::vector<double> x;  // full, normalized
        double log_value;
        bool converged;
    };
    std::vector<Entry> entries;
    for (auto& fr : face_results) {
        result.starts_used += fr.starts;
        if (!std::isfinite(fr.best.log_value)) continue;
        ++result.cells_examined;
        entries.push_back({unit_normalized(reduced.expand(fr.best.y)), fr.best.log_value, fr.best.converged});
    }

    // (b) multi-start Nelder-Mead on the unreduced objective, each run polished in its cell.
    const Face open_face = make_face(full, {});
    std::vector<Entry> direct(static_cast<std::size_t>(std::max(0, options.starts)));
    std::vector<int> direct_used(direct.size(), 0);
    parallel_chunks(direct.size(), [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t s = begin; s < end; ++s) {
            direct[s].log_value = kInf;
            auto r = search_face(full, open_face, 1, options.seed, 2, s, options);
            direct_used[s] = r.starts;
            if (!std::isfinite(r.best.log_value)) continue;
            direct[s] = {unit_normalized(r.best.y), r.best.log_value, r.best.converged};
        }
    });
    for (std::size_t s = 0; s < direct.size(); ++s) {
        result.starts_used += direct_used[s];
        if (std::isfinite(direct[s].log_value)) entries.push_back(direct[s]);
    }
    if (entries.empty()) fail(ErrorKind::NonKltModel, "no start found inside the klt region");

    // Minimum value; among ties the lexicographically smallest normalized weight.
    double best_log = kInf;
    for (const auto& e : entries) best_log = std::min(best_log, e.log_value);
    const Entry* winner = nullptr;
    for (const auto& e : entries) {
        if (e.log_value > best_log + kTieTolerance) continue;
        if (!winner || lex_less(e.x, winner->x)) winner = &e;
    }
    // Within the winning location keep the representative closest to stationarity.
    double winner_residual = kInf;
    for (const auto& e : entries) {
        if (e.log_value > best_log + kTieTolerance) continue;
        if (lex_less(e.x, winner->x) || lex_less(winner->x, e.x)) continue;
        Face cell = active_face(full, e.x);
        double r = cell.empty ? 0.0 : residual_at(full, cell, e.x);
        if (r < winner_residual) winner = &e, winner_residual = r;
    }
    std::vector<double> x = winner->x;
    double log_value = winner->log_value;

    // A symmetric optimum must survive symmetry-breaking perturbations.
    {
        NelderMeadOptions nm;
        nm.x_tolerance = options.tolerance;
        nm.initial_step = 0.05;
        auto objective = [&](std::span<const double> u) {
            auto y = open_face.point(full, u);
            return y ? full.log_hvol(*y) : kInf;
        };
        std::mt19937_64 rng(stream_seed(options.seed, 3, 0, 0));
        std::normal_distribution<double> jitter(0.0, 0.05);
        auto base = open_face.params_of(x);
        for (int trial = 0; trial < 4 && !base.empty(); ++trial) {
            auto u = base;
            for (auto& c : u) c += jitter(rng);
            if (!std::isfinite(objective(u))) continue;
            auto r = nelder_mead(objective, u, nm);
            ++result.starts_used;
            if (r.value < log_value - kTieTolerance) {
                auto [y, v] = refine(full, *open_face.point(full, r.x), r.value);
                x = unit_normalized(y);
                log_value = v;
                result.symmetry_broken = true;
            }
        }
    }

    result.weight = RealWeight(x);
    result.value = std::exp(log_value);

    // Small-denominator reconstruction, kept only when it reproduces the point and the value.
    {
        std::vector<Rational> q;
        bool close = true;
        for (double c : x) {
            Rational r = approximate(c, kSnapDenominator);
            close = close && r > 0 && std::abs(r.get_d() - c) <= kSnapTolerance * std::max(1.0, std::abs(c));
            q.push_back(r);
        }
        if (close) {
            try {
                WeightVector exact(q);
                Rational v = normalized_volume(model, exact).normalized_volume;
                if (std::abs(v.get_d() - result.value) <= 1e-9 * result.value) {
                    result.exact_weight = exact;
                    result.exact_value = v;
                    result.weight = to_real(exact);
                    result.value = v.get_d();
                    x.assign(result.weight.begin(), result.weight.end());
                }
            } catch (const Error&) {
            }
        }
    }

    if (auto* h = std::get_if<Hypersurface>(&model)) {
        if (result.exact_weight) {
            for (auto i : weighted_order(*result.exact_weight, h->support()).active)
                result.active_monomials.push_back(h->support()[i]);
        } else {
            for (auto i : full.active_at(x, 1e-9)) result.active_monomials.push_back(h->support()[i]);
        }
    }

    Face cell = active_face(full, x);
    result.first_order_residual = cell.empty ? 0.0 : residual_at(full, cell, x);

    double a = full.log_discrepancy(x);
    double smallest = *std::min_element(x.begin(), x.end());
    if (a < 1e-6 * full.weighted_sum(x) || smallest < 1e-6 || result.value < 1e-12)
        result.status = MinimizeStatus::BoundarySuspect;
    else if (result.first_order_residual <= kResidualThreshold)
        result.status = MinimizeStatus::Converged;
    else
        result.status = MinimizeStatus::MaxIter;
    return result;
}

}  // namespace hvol
