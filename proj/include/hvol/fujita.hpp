#pragma once

#include "hvol/rational.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hvol {

/// Dense polynomial, coefficients in increasing degree.
struct Polynomial {
    std::vector<Rational> coefficients;

    Rational operator()(const Rational& x) const;
    Polynomial derivative() const;
    int degree() const;  // -1 for the zero polynomial

    bool operator==(const Polynomial&) const = default;
};

/// Piecewise polynomial x -> Vol(L - xD) on [0, tau], zero beyond tau.
class VolumeCurve {
public:
    /// Throws InvalidCurve unless the curve is continuous, non-negative,
    /// non-increasing, vanishes at tau and each piece has degree <= base_dim.
    static VolumeCurve make(int base_dim, std::vector<Rational> breakpoints, std::vector<Polynomial> pieces);

    std::span<const Rational> breakpoints() const noexcept { return breakpoints_; }
    std::span<const Polynomial> pieces() const noexcept { return pieces_; }
    const Rational& vol_at_zero() const noexcept { return vol_at_zero_; }
    const Rational& tau() const noexcept { return breakpoints_.back(); }
    int base_dim() const noexcept { return base_dim_; }

    Rational operator()(const Rational& x) const;

    bool operator==(const VolumeCurve&) const = default;

private:
    int base_dim_ = 0;
    std::vector<Rational> breakpoints_;
    std::vector<Polynomial> pieces_;
    Rational vol_at_zero_;
};

/// The cone C(V, L) over a base V of dimension n - 1 with -K_V = rL, and a
/// prime divisor D on V given through its volume curve.
class ConeModel {
public:
    static ConeModel make(Rational r, VolumeCurve curve);

    const Rational& r() const noexcept { return r_; }
    const VolumeCurve& curve() const noexcept { return curve_; }
    int base_dim() const noexcept { return curve_.base_dim(); }
    int dim() const noexcept { return curve_.base_dim() + 1; }

    bool operator==(const ConeModel&) const = default;

private:
    Rational r_;
    VolumeCurve curve_;
};

/// A(w_alpha) = alpha r + (r + 1).
Rational log_discrepancy_w_alpha(const ConeModel& cone, const Rational& alpha);

/// vol(w_alpha); alpha = 0 is the exceptional divisor of the blowup of the vertex.
Rational vol_w_alpha(const ConeModel& cone, const Rational& alpha);

/// hvol(w_{1/beta}) for beta >= 0; beta = 0 is the divisor V at the vertex.
/// Also evaluates for -1/(1 + tau) < beta < 0, where the closed form stays analytic.
Rational phi(const ConeModel& cone, const Rational& beta);

/// The beta -> +infinity limit (r + 1)^n vol(w_0).
Rational phi_infinity(const ConeModel& cone);

/// eta(D) = (-K_V)^{n-1} - int_0^inf Vol(-K_V - xD) dx.
Rational eta(const ConeModel& cone);

/// n eta(D), checked against a central difference of phi at 0 (step 1e-5,
/// Richardson-extrapolated with step 5e-6).
/// Throws InternalConsistency when they disagree.
Rational phi_prime_zero(const ConeModel& cone);

/// The central difference (phi(h) - phi(-h)) / 2h.
Rational phi_prime_difference(const ConeModel& cone, const Rational& h);

/// f(t) = phi(t r / ((1 - t)(r + 1))) for t in [0, 1]; t = 1 is the limit.
Rational f_of_t(const ConeModel& cone, const Rational& t);

/// f(t) through r^n (r+1)^n int -dVol(L - xD) / (r + 1 + (rx - 1)t)^n.
Rational f_stieltjes(const ConeModel& cone, const Rational& t);

struct ConvexityReport {
    bool convex = false;
    Rational min_second_difference;
    std::vector<Rational> values;  // f on the grid
};

/// Second differences of f on a uniform grid of [0, 1], each >= -1e-9.
ConvexityReport convexity_check(const ConeModel& cone, int points = 101);

/// Smallest sampled beta = 10^-k (k = 1..12) with phi(beta) < phi(0), if any.
std::optional<Rational> find_phi_decrease(const ConeModel& cone);

struct NamedCone {
    std::string name;
    ConeModel cone;
};

/// Projective space over a hyperplane: Vol = (1 - x)^{n-1}, r = n.
ConeModel projective_cone(int n);

/// Test cones: projective spaces n = 2..5, curves with eta > 0 and eta < 0,
/// and the blowup of P^2 at a point with D the exceptional curve or a line through the point.
std::vector<NamedCone> fujita_catalog();

}  // namespace hvol
