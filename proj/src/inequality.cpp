#include "hvol/inequality.hpp"

#include "hvol/error.hpp"
#include "hvol/families.hpp"
#include "hvol/parallel.hpp"
#include "hvol/valuation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

namespace hvol {

namespace {

std::uint64_t mix(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::mt19937_64 sample_rng(std::uint64_t seed, std::string_view suite, int n, std::size_t index)
{
    std::uint64_t h = mix(seed);
    for (char c : suite) h = mix(h ^ static_cast<unsigned char>(c));
    h = mix(h ^ static_cast<std::uint64_t>(n));
    return std::mt19937_64(mix(h ^ index));
}

// Log-uniform on [10^-span, 10^span], converted to a rational exactly.
WeightVector log_uniform(std::mt19937_64& rng, std::size_t n, double span)
{
    std::uniform_real_distribution<double> u(-span * std::log(10.0), span * std::log(10.0));
    std::vector<Rational> c;
    for (std::size_t i = 0; i < n; ++i) c.emplace_back(std::exp(u(rng)));
    return WeightVector(std::move(c));
}

struct Worst {
    Rational margin;
    std::size_t index = 0;
    std::optional<WeightVector> witness;
    bool set = false;

    void offer(const Rational& m, std::size_t i, const WeightVector& x)
    {
        if (!set || m < margin || (m == margin && i < index)) {
            margin = m;
            index = i;
            witness = x;
            set = true;
        }
    }
    void merge(const Worst& other)
    {
        if (other.set) offer(other.margin, other.index, *other.witness);
    }
};

// Runs margin(sample(i)) over i < n in parallel; the reduction is a min with index ties.
Worst sweep(std::size_t n, const std::function<std::optional<WeightVector>(std::size_t)>& sample,
            const std::function<Rational(const WeightVector&)>& margin, std::string* failure = nullptr)
{
    std::vector<Worst> partial(thread_count());
    std::vector<std::string> notes(partial.size());
    parallel_chunks(n, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            auto x = sample(i);
            if (!x) continue;
            try {
                partial[chunk].offer(margin(*x), i, *x);
            } catch (const Error& e) {
                if (notes[chunk].empty()) notes[chunk] = e.what();
            }
        }
    });
    Worst total;
    for (auto& p : partial) total.merge(p);
    if (failure)
        for (auto& s : notes)
            if (!s.empty() && failure->empty()) *failure = s;
    return total;
}

InequalityVerdict finish(std::string name, std::string config, int samples, const Worst& worst)
{
    InequalityVerdict v;
    v.name = std::move(name);
    v.config = std::move(config);
    v.samples = samples;
    if (worst.set) {
        v.min_margin = worst.margin.get_d();
        v.witnesses.push_back(*worst.witness);
        v.passed = v.min_margin >= -kVerdictTolerance;
    }
    return v;
}

std::string smooth_config(const SmoothPoint& p) { return "smooth n=" + std::to_string(p.dim); }

Rational margin_product_bound(const WeightVector& x)
{
    const std::size_t n = x.size();
    Rational lhs = ipow(x.max(), static_cast<unsigned>(n - 1)) * x.min() / x.product();
    std::vector<Rational> sorted(x.begin(), x.end());
    std::sort(sorted.begin(), sorted.end());
    Rational product = 1;
    for (std::size_t i = 1; i + 1 < n; ++i) product *= sorted.back() / sorted[i];
    if (product != lhs) fail(ErrorKind::InternalConsistency, "product form disagrees at " + to_string(x));
    if (product < 1) fail(ErrorKind::InternalConsistency, "product form below 1 at " + to_string(x));
    return lhs - 1 / ipow(Rational(2), static_cast<unsigned>(n));
}

Rational margin_skew2(const WeightVector& x)
{
    if (x.size() != 2) fail(ErrorKind::Domain, "skewness identity needs two coordinates");
    SingularityModel plane = SmoothPoint::make(2);
    Rational vol = volume(plane, x);
    return -abs(Rational(vol - 1 / (x.max() * x.min())));
}

Rational margin_dfem(const WeightVector& x)
{
    SingularityModel m = SmoothPoint::make(static_cast<int>(x.size()));
    Rational bound = ipow(Rational(static_cast<long>(x.size())), static_cast<unsigned>(x.size()));
    Rational ratio_minus_one = normalized_volume(m, x).normalized_volume / bound - 1;
    if (ratio_minus_one == 0 && x.min() != x.max())
        fail(ErrorKind::InternalConsistency, "equality off the diagonal at " + to_string(x));
    return ratio_minus_one;
}

Rational properness_ratio(const SingularityModel& model, const WeightVector& x)
{
    auto r = normalized_volume(model, x);
    return r.normalized_volume * r.ideal_value / r.log_discrepancy;
}

Rational margin_proper(const SingularityModel& model, const WeightVector& x)
{
    Rational r = properness_ratio(model, x);
    return std::holds_alternative<SmoothPoint>(model) ? Rational(r - 1) : r;
}

Rational margin_chain(const WeightVector& x)
{
    Rational a = x.sum(), low = x.min();
    Rational worst = a;
    for (const auto& c : x) worst = std::min(worst, std::min(Rational(c - low), Rational(a - c)));
    return worst / a;
}

// Very skewed weights: one or several coordinates pushed to 10^{+-k}.
std::vector<WeightVector> adversarial_weights(std::size_t n)
{
    std::vector<WeightVector> out;
    for (int k = 1; k <= 6; ++k) {
        Rational big = ipow(Rational(10), static_cast<unsigned>(k));
        for (std::size_t lead = 1; lead < n; ++lead) {
            std::vector<Rational> up(n, Rational(1)), down(n, Rational(1));
            for (std::size_t i = 0; i < lead; ++i) up[i] = big, down[i] = 1 / big;
            out.emplace_back(up);
            out.emplace_back(down);
        }
    }
    return out;
}

bool klt(const SingularityModel& model, const WeightVector& x)
{
    try {
        return log_discrepancy(model, x) > 0 && volume(model, x) > 0;
    } catch (const Error&) {
        return false;
    }
}

// Moves one coordinate so the two smallest monomials tie; off that locus the
// hypersurface weight formulas describe no valuation on X.
std::optional<WeightVector> snap_to_wall(const Hypersurface& h, const WeightVector& x)
{
    auto support = h.support();
    if (support.size() < 2) return std::nullopt;
    std::vector<std::pair<Rational, std::size_t>> values;
    for (std::size_t m = 0; m < support.size(); ++m) {
        Rational v = 0;
        for (std::size_t i = 0; i < x.size(); ++i) v += support[m][i] * x[i];
        values.emplace_back(v, m);
    }
    std::sort(values.begin(), values.end());
    const auto& a = support[values[0].second];
    const auto& b = support[values[1].second];
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (a[i] == b[i]) continue;
        std::vector<Rational> c(x.begin(), x.end());
        c[i] += (values[1].first - values[0].first) / (a[i] - b[i]);
        if (!(c[i] > 0)) continue;
        WeightVector y(std::move(c));
        auto order = weighted_order(y, support);
        bool tie = std::count(order.active.begin(), order.active.end(), values[0].second) &&
                   std::count(order.active.begin(), order.active.end(), values[1].second);
        if (tie) return y;
    }
    return std::nullopt;
}

std::optional<WeightVector> admissible(const SingularityModel& model, const WeightVector& x)
{
    if (auto* h = std::get_if<Hypersurface>(&model)) {
        auto y = snap_to_wall(*h, x);
        if (!y || !klt(model, *y)) return std::nullopt;
        return y;
    }
    if (!klt(model, x)) return std::nullopt;
    return x;
}

std::string model_config(const SingularityModel& model)
{
    if (auto* p = std::get_if<SmoothPoint>(&model)) return smooth_config(*p);
    return std::string(kind_name(model)) + " dim=" + std::to_string(intrinsic_dim(model)) +
           " ambient=" + std::to_string(ambient_dim(model));
}

}  // namespace

long skewness_s(const WeightVector& x)
{
    Rational sup = x.max() / x.min();
    long s = std::max(2L, ceil_z(sup).get_si());
    if (Rational(s) > 2 * sup) fail(ErrorKind::InternalConsistency, "s exceeds 2 sup at " + to_string(x));
    return s;
}

Rational suite_margin(std::string_view suite, const SingularityModel& model, const WeightVector& x)
{
    check_weight_length(model, x);
    if (suite == "proper") return margin_proper(model, x);
    if (!std::holds_alternative<SmoothPoint>(model))
        fail(ErrorKind::UnsupportedModel, std::string(suite) + " runs on smooth points only");
    if (suite == "thm13") return margin_product_bound(x);
    if (suite == "skew2") return margin_skew2(x);
    if (suite == "dfem") return margin_dfem(x);
    if (suite == "thm12") return margin_chain(x);
    fail(ErrorKind::Domain, "unknown suite " + std::string(suite));
}

InequalityVerdict check_product_bound(const SmoothPoint& model, const SweepOptions& options)
{
    const auto n = static_cast<std::size_t>(model.dim);
    std::string failure;
    auto worst = sweep(
        static_cast<std::size_t>(options.samples),
        [&](std::size_t i) {
            auto rng = sample_rng(options.seed, "thm13", model.dim, i);
            return std::optional(log_uniform(rng, n, 3));
        },
        margin_product_bound, &failure);
    auto v = finish("thm13", smooth_config(model), options.samples, worst);
    if (!failure.empty()) v.passed = false, v.note = failure;
    return v;
}

InequalityVerdict check_skewness_identity_dim2(const SweepOptions& options)
{
    auto worst = sweep(
        static_cast<std::size_t>(options.samples),
        [&](std::size_t i) {
            auto rng = sample_rng(options.seed, "skew2", 2, i);
            std::uniform_int_distribution<long> d(1, 1000);
            std::vector<Rational> c;
            for (int k = 0; k < 2; ++k) c.push_back(ratio(d(rng), d(rng)));
            return std::optional(WeightVector(std::move(c)));
        },
        margin_skew2);
    auto v = finish("skew2", "smooth n=2", options.samples, worst);
    v.passed = v.passed && worst.set && worst.margin == 0;
    return v;
}

InequalityVerdict check_dfem(const SmoothPoint& model, const SweepOptions& options)
{
    const auto n = static_cast<std::size_t>(model.dim);
    std::string failure;
    std::vector<Rational> diagonal(n, Rational(1));
    auto worst = sweep(
        static_cast<std::size_t>(options.samples) + 1,
        [&](std::size_t i) {
            if (i == 0) return std::optional(WeightVector(diagonal));
            auto rng = sample_rng(options.seed, "dfem", model.dim, i);
            return std::optional(log_uniform(rng, n, 3));
        },
        margin_dfem, &failure);
    auto v = finish("dfem", smooth_config(model), options.samples, worst);
    if (!failure.empty()) v.passed = false, v.note = failure;
    return v;
}

InequalityVerdict check_valuation_chain(const SmoothPoint& model, const SweepOptions& options)
{
    const auto n = static_cast<std::size_t>(model.dim);
    auto worst = sweep(
        static_cast<std::size_t>(options.samples),
        [&](std::size_t i) {
            auto rng = sample_rng(options.seed, "thm12", model.dim, i);
            return std::optional(log_uniform(rng, n, 3));
        },
        margin_chain);
    return finish("thm12", smooth_config(model), options.samples, worst);
}

InequalityVerdict check_properness_ratio(const SingularityModel& model, const SweepOptions& options)
{
    const auto n = static_cast<std::size_t>(ambient_dim(model));
    const auto fixed = adversarial_weights(n);
    const std::size_t total = static_cast<std::size_t>(options.samples);
    const std::size_t half = total / 2;
    const int key = static_cast<int>(n) * 16 + static_cast<int>(model.index());

    auto sample = [&](std::size_t i) -> std::optional<WeightVector> {
        if (i < fixed.size()) return admissible(model, fixed[i]);
        auto rng = sample_rng(options.seed, "proper", key, i - fixed.size());
        for (int attempt = 0; attempt < 64; ++attempt)
            if (auto x = admissible(model, log_uniform(rng, n, 2))) return x;
        return std::nullopt;
    };
    auto ratio_of = [&](const WeightVector& x) { return properness_ratio(model, x); };
    Worst first = sweep(fixed.size() + half, sample, ratio_of);
    Worst all = sweep(fixed.size() + total, sample, ratio_of);

    InequalityVerdict v;
    v.name = "proper";
    v.config = model_config(model);
    v.samples = options.samples;
    if (!all.set) {
        v.note = "no klt samples";
        return v;
    }
    const bool smooth = std::holds_alternative<SmoothPoint>(model);
    v.estimate = all.margin.get_d();
    v.min_margin = smooth ? Rational(all.margin - 1).get_d() : all.margin.get_d();
    v.witnesses.push_back(*all.witness);
    double drift = std::abs(first.margin.get_d() - all.margin.get_d()) / all.margin.get_d();
    bool stable = drift < 0.05;
    v.passed = all.margin > 0 && stable && v.min_margin >= -kVerdictTolerance;
    v.note = "K estimate moved " + format_double(100 * drift) + "% from half to all samples";
    return v;
}

std::vector<InequalityVerdict> run_suite(std::string_view suite, const SweepOptions& options)
{
    const bool all = suite == "all";
    if (!all && std::find(std::begin(kSuites), std::end(kSuites), suite) == std::end(kSuites))
        fail(ErrorKind::Domain, "unknown suite " + std::string(suite));
    std::vector<InequalityVerdict> out;
    auto want = [&](std::string_view s) { return all || suite == s; };
    for (int n = 2; n <= 5; ++n) {
        SmoothPoint p = SmoothPoint::make(n);
        if (want("thm13")) out.push_back(check_product_bound(p, options));
        if (want("dfem")) out.push_back(check_dfem(p, options));
        if (want("proper")) out.push_back(check_properness_ratio(p, options));
        if (want("thm12")) out.push_back(check_valuation_chain(p, options));
    }
    if (want("skew2")) out.push_back(check_skewness_identity_dim2(options));
    if (want("proper")) {
        for (int n : {2, 3}) {
            out.push_back(check_properness_ratio(a_singularity(n, 2), options));
            out.back().config = "A^" + std::to_string(n) + "_1";
        }
    }
    return out;
}

}  // namespace hvol
