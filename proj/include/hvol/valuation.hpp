#pragma once

#include "hvol/model.hpp"
#include "hvol/weight.hpp"

#include <optional>
#include <span>
#include <vector>

namespace hvol {

template <class T>
struct WeightedOrder {
    T value;
    std::vector<std::size_t> active;  // indices into the support attaining the min
};

/// val_x(f) = min over the support of <x, e>, with the argmin set.
template <class T>
WeightedOrder<T> weighted_order(const BasicWeight<T>& x, std::span<const ExponentVector> support);

/// Log discrepancy A_X(v_x).
///  smooth:       sum x_i
///  hypersurface: sum x_i - v_x(f), used for every positive x (the
///                continuous extension of the generic-x formula)
///  toric:        <gamma, x>
/// Throws NonKltWeight when the hypersurface formula is <= 0.
template <class T>
T log_discrepancy(const SingularityModel& model, const BasicWeight<T>& x);

/// vol(v_x).
///  smooth:       1 / prod x_i
///  hypersurface: v_x(f) / prod x_i
///  toric:        1 / (index * prod c_i) where x = sum c_i v_i
template <class T>
T volume(const SingularityModel& model, const BasicWeight<T>& x);

template <class T>
struct BasicReport {
    T log_discrepancy;
    T volume;
    T normalized_volume;
    T ideal_value;               // v_x(m)
    std::optional<T> skewness;   // sup_m v_x / ord_o; known in closed form only on smooth points
};

using ValuationReport = BasicReport<Rational>;
using RealReport = BasicReport<double>;

template <class T>
BasicReport<T> normalized_volume(const SingularityModel& model, const BasicWeight<T>& x);

/// lct(a_.(v_x)) = sum x_i. Smooth points only.
template <class T>
T lct_of_valuation_ideals(const SingularityModel& model, const BasicWeight<T>& x);

/// v_x(m): min x_i on smooth points and hypersurfaces; on a toric germ the
/// minimum of <y, x> over the nonzero semigroup generators.
template <class T>
T ideal_value(const SingularityModel& model, const BasicWeight<T>& x);

/// Throws Domain unless x has the model's ambient length.
template <class T>
void check_weight_length(const SingularityModel& model, const BasicWeight<T>& x);

}  // namespace hvol
