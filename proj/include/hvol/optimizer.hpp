#pragma once

#include "hvol/model.hpp"
#include "hvol/valuation.hpp"
#include "hvol/weight.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hvol {

struct MinimizeOptions {
    int starts = 16;             // full-space Nelder-Mead starts; cells get a share of these
    std::uint64_t seed = 1;
    double tolerance = 1e-10;    // simplex size at convergence (log coordinates)
};

enum class MinimizeStatus { Converged, BoundarySuspect, MaxIter };
const char* to_string(MinimizeStatus s);

struct MinimizationResult {
    RealWeight weight;                        // normalized: max coordinate 1
    double value = 0;
    std::optional<WeightVector> exact_weight;  // set when a small-denominator weight reproduces the minimum
    std::optional<Rational> exact_value;       // hvol at exact_weight, exact
    std::vector<ExponentVector> active_monomials;
    MinimizeStatus status = MinimizeStatus::MaxIter;
    int starts_used = 0;
    double first_order_residual = 0;
    int cells_examined = 0;
    bool symmetry_broken = false;              // a non-symmetric perturbation beat the symmetric optimum
};

/// Coordinate classes of a hypersurface: i ~ j when swapping z_i and z_j maps
/// the support onto itself. Returned sorted, each class sorted.
std::vector<std::vector<std::size_t>> symmetrize(const Hypersurface& model);

/// hvol with v_x(f) replaced by <x, active>. Equals hvol when active attains the minimum.
template <class T>
T evaluate_branch(const Hypersurface& model, const BasicWeight<T>& x, const ExponentVector& active);

/// Minimizes hvol(v_x) over the positive weight cone.
/// Throws NonKltModel when no weight has positive log discrepancy.
MinimizationResult minimize_hvol(const SingularityModel& model, const MinimizeOptions& options = {});

}  // namespace hvol
