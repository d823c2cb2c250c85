#pragma once

#include "hvol/model.hpp"
#include "hvol/weight.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace hvol {

/// Colengths dim R/a_r at a schedule of radii and the matching estimates
/// n! * colength / r^n of vol(v_x).
struct ColengthSeries {
    std::vector<Rational> radii;
    std::vector<std::uint64_t> colengths;
    std::vector<double> vol_estimates;

    double last_estimate() const { return vol_estimates.back(); }
};

/// #{e in Z^n_{>=0} : <x, e> < r}.
std::uint64_t colength_smooth(int n, const WeightVector& x, const Rational& r);

/// Inclusion-exclusion surrogate colength_smooth(N, x, r) - colength_smooth(N, x, r - v_x(f)),
/// N the ambient dimension. Its leading term in r is the true colength; lower
/// order terms are not.
std::uint64_t colength_hypersurface(const Hypersurface& model, const WeightVector& x, const Rational& r);

/// #{y in Z^n : <y, v_j> >= 0 for all generators, <y, x> < r}.
/// Throws InvalidWeight when x is not in the interior of sigma (unbounded region).
std::uint64_t colength_toric(const ToricCone& model, const WeightVector& x, const Rational& r);

std::uint64_t colength(const SingularityModel& model, const WeightVector& x, const Rational& r);

/// Geometric schedule, 8 radii from 16 * max x to 512 * max x.
std::vector<Rational> default_radii(const WeightVector& x);

/// radii must be strictly increasing and positive.
ColengthSeries estimate_volume(const SingularityModel& model, const WeightVector& x,
                               std::span<const Rational> radii);

}  // namespace hvol
