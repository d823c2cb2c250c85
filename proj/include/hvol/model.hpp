#pragma once

#include "hvol/error.hpp"
#include "hvol/rational.hpp"

#include <compare>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace hvol {

/// Exponent of a monomial z^e.
struct ExponentVector {
    std::vector<int> entries;

    std::size_t size() const noexcept { return entries.size(); }
    int operator[](std::size_t i) const { return entries[i]; }
    int total_degree() const;

    auto operator<=>(const ExponentVector&) const = default;
};

struct SmoothPoint {
    int dim = 0;

    static SmoothPoint make(int dim);
    bool operator==(const SmoothPoint&) const = default;
};

struct HypersurfaceOptions {
    /// Admit a support of multiplicity 1 (the germ is then smooth). Needed for
    /// the A_0 row of the A-family table; off by default.
    bool allow_smooth_germ = false;
};

/// Germ {f = 0} in C^{ambient_dim}; only the monomial support of f matters.
class Hypersurface {
public:
    static Hypersurface make(std::vector<ExponentVector> support, HypersurfaceOptions options = {});

    int ambient_dim() const noexcept { return ambient_dim_; }
    int x_dim() const noexcept { return ambient_dim_ - 1; }
    int multiplicity() const noexcept { return multiplicity_; }
    bool allows_smooth_germ() const noexcept { return allow_smooth_; }
    std::span<const ExponentVector> support() const noexcept { return support_; }

    bool operator==(const Hypersurface&) const = default;

private:
    Hypersurface() = default;

    int ambient_dim_ = 0;
    int multiplicity_ = 0;
    bool allow_smooth_ = false;
    std::vector<ExponentVector> support_;
};

/// Simplicial Q-Gorenstein toric germ U_sigma. Generators are the primitive
/// rays of sigma in N = Z^rank; gamma is the covector with <gamma, v_i> = 1.
class ToricCone {
public:
    using IntVector = std::vector<std::int64_t>;

    static ToricCone make(std::vector<IntVector> generators, std::vector<Rational> gamma);

    int rank() const noexcept { return rank_; }
    std::span<const IntVector> generators() const noexcept { return generators_; }
    std::span<const Rational> gamma() const noexcept { return gamma_; }

    /// |det| of the generator matrix, the index of the sublattice they span.
    const Rational& index() const noexcept { return index_; }

    /// Row i holds the coefficients c with x = sum_j c_j v_j solved for c_i.
    std::span<const std::vector<Rational>> inverse_generators() const noexcept { return inverse_; }

    /// Primitive ray generators of the dual cone sigma^vee in M.
    std::span<const IntVector> dual_rays() const noexcept { return dual_rays_; }

    /// Nonzero lattice points of sigma^vee that can generate the maximal ideal:
    /// the dual rays plus the points of the half-open fundamental parallelepiped.
    std::span<const IntVector> ideal_generators() const noexcept { return ideal_generators_; }

    bool operator==(const ToricCone& other) const
    {
        return generators_ == other.generators_ && gamma_ == other.gamma_;
    }

private:
    ToricCone() = default;

    int rank_ = 0;
    std::vector<IntVector> generators_;
    std::vector<Rational> gamma_;
    Rational index_;
    std::vector<std::vector<Rational>> inverse_;
    std::vector<IntVector> dual_rays_;
    std::vector<IntVector> ideal_generators_;
};

using SingularityModel = std::variant<SmoothPoint, Hypersurface, ToricCone>;

/// dim X. This is the exponent in A^n * vol, never the ambient dimension.
int intrinsic_dim(const SingularityModel& model);

/// Length of a weight vector on this model.
int ambient_dim(const SingularityModel& model);

const char* kind_name(const SingularityModel& model);

}  // namespace hvol
