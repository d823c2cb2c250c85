#include "hvol/valuation.hpp"

#include <limits>
#include <string>

namespace hvol {

namespace {

template <class T>
T lift(const Rational& q);
template <>
Rational lift<Rational>(const Rational& q) { return q; }
template <>
double lift<double>(const Rational& q) { return q.get_d(); }

template <class T>
T lift_int(long a) { return T(a); }

template <class T>
T toric_coefficient(const ToricCone& cone, const BasicWeight<T>& x, std::size_t i)
{
    T c = 0;
    const auto& row = cone.inverse_generators()[i];
    for (std::size_t j = 0; j < x.size(); ++j)
        if (row[j] != 0) c += lift<T>(row[j]) * x[j];
    return c;
}

}  // namespace

template <class T>
void check_weight_length(const SingularityModel& model, const BasicWeight<T>& x)
{
    if (static_cast<int>(x.size()) != ambient_dim(model))
        fail(ErrorKind::Domain, "weight has length " + std::to_string(x.size()) + ", model expects " +
                                    std::to_string(ambient_dim(model)));
}

template <class T>
WeightedOrder<T> weighted_order(const BasicWeight<T>& x, std::span<const ExponentVector> support)
{
    if (support.empty()) fail(ErrorKind::InvalidModel, "weighted order of an empty support");
    WeightedOrder<T> out{T(0), {}};
    for (std::size_t m = 0; m < support.size(); ++m) {
        const auto& e = support[m];
        if (e.size() != x.size()) fail(ErrorKind::Domain, "exponent and weight lengths differ");
        T s = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (e[i] != 0) s += lift_int<T>(e[i]) * x[i];
        if (out.active.empty() || s < out.value) {
            out.value = s;
            out.active.assign(1, m);
        } else if (s == out.value) {
            out.active.push_back(m);
        }
    }
    return out;
}

template <class T>
T log_discrepancy(const SingularityModel& model, const BasicWeight<T>& x)
{
    check_weight_length(model, x);
    if (auto* h = std::get_if<Hypersurface>(&model)) {
        T a = x.sum() - weighted_order(x, h->support()).value;
        if (!(a > 0)) fail(ErrorKind::NonKltWeight, "sum x - v_x(f) <= 0: weight leaves the klt region");
        return a;
    }
    if (auto* t = std::get_if<ToricCone>(&model)) {
        T a = 0;
        for (std::size_t i = 0; i < x.size(); ++i) a += lift<T>(t->gamma()[i]) * x[i];
        return a;
    }
    return x.sum();
}

template <class T>
T volume(const SingularityModel& model, const BasicWeight<T>& x)
{
    check_weight_length(model, x);
    if (auto* h = std::get_if<Hypersurface>(&model)) return T(weighted_order(x, h->support()).value / x.product());
    if (auto* t = std::get_if<ToricCone>(&model)) {
        T denom = lift<T>(t->index());
        for (std::size_t i = 0; i < x.size(); ++i) {
            T c = toric_coefficient(*t, x, i);
            if (!(c > 0)) fail(ErrorKind::InvalidWeight, "weight is not in the interior of sigma");
            denom *= c;
        }
        return T(1 / denom);
    }
    return T(1 / x.product());
}

template <class T>
T ideal_value(const SingularityModel& model, const BasicWeight<T>& x)
{
    check_weight_length(model, x);
    if (auto* t = std::get_if<ToricCone>(&model)) {
        bool first = true;
        T best = 0;
        for (const auto& y : t->ideal_generators()) {
            T s = 0;
            for (std::size_t i = 0; i < x.size(); ++i)
                if (y[i] != 0) s += lift_int<T>(static_cast<long>(y[i])) * x[i];
            if (first || s < best) best = s, first = false;
        }
        return best;
    }
    return x.min();
}

template <class T>
BasicReport<T> normalized_volume(const SingularityModel& model, const BasicWeight<T>& x)
{
    BasicReport<T> r;
    r.log_discrepancy = log_discrepancy(model, x);
    r.volume = volume(model, x);
    r.normalized_volume = ipow(r.log_discrepancy, static_cast<unsigned>(intrinsic_dim(model))) * r.volume;
    r.ideal_value = ideal_value(model, x);
    if (std::holds_alternative<SmoothPoint>(model)) r.skewness = x.max();
    return r;
}

template <class T>
T lct_of_valuation_ideals(const SingularityModel& model, const BasicWeight<T>& x)
{
    if (!std::holds_alternative<SmoothPoint>(model))
        fail(ErrorKind::UnsupportedModel, "lct of valuation ideals is implemented for smooth points only");
    check_weight_length(model, x);
    return x.sum();
}

#define HVOL_INSTANTIATE(T)                                                                          \
    template void check_weight_length<T>(const SingularityModel&, const BasicWeight<T>&);           \
    template WeightedOrder<T> weighted_order<T>(const BasicWeight<T>&, std::span<const ExponentVector>); \
    template T log_discrepancy<T>(const SingularityModel&, const BasicWeight<T>&);                 \
    template T volume<T>(const SingularityModel&, const BasicWeight<T>&);                          \
    template T ideal_value<T>(const SingularityModel&, const BasicWeight<T>&);                     \
    template BasicReport<T> normalized_volume<T>(const SingularityModel&, const BasicWeight<T>&);  \
    template T lct_of_valuation_ideals<T>(const SingularityModel&, const BasicWeight<T>&);

HVOL_INSTANTIATE(Rational)
HVOL_INSTANTIATE(double)

#undef HVOL_INSTANTIATE

}  // namespace hvol
