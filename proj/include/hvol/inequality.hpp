#pragma once

#include "hvol/model.hpp"
#include "hvol/weight.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hvol {

/// Outcome of one sweep. Margins are LHS - RHS, or ratio - 1, so a pass means
/// min_margin >= -tolerance (1e-12: every sweep runs on exact rationals).
struct InequalityVerdict {
    std::string name;                      // suite id: thm13, skew2, dfem, proper, thm12
    std::string config;                    // e.g. "smooth n=3"
    int samples = 0;
    double min_margin = 0;
    std::vector<WeightVector> witnesses;   // worst sample first
    bool passed = false;
    std::optional<double> estimate;        // proper: the empirical constant K
    std::string note;
};

struct SweepOptions {
    int samples = 10000;
    std::uint64_t seed = 1;
};

inline constexpr double kVerdictTolerance = 1e-12;

/// vol (max x)^{n-1} (min x) >= 2^{-n}, and the same LHS equals
/// prod_{i=2}^{n-1} x_(n)/x_(i) >= 1 over the sorted coordinates.
/// Weights are log-uniform on [1e-3, 1e3]^n.
InequalityVerdict check_product_bound(const SmoothPoint& model, const SweepOptions& options = {});

/// vol = 1 / (x_max x_min) in dimension 2, exactly.
InequalityVerdict check_skewness_identity_dim2(const SweepOptions& options = {});

/// K = inf hvol v(m) / A over random and fixed skewed weights. Requires K > 0
/// and K moving by less than 5% between the first half and all samples.
/// On smooth points the margin is the ratio minus 1. Hypersurface samples are
/// moved onto the locus where the two smallest monomials of f tie.
InequalityVerdict check_properness_ratio(const SingularityModel& model, const SweepOptions& options = {});

/// hvol >= n^n, with equality only on the diagonal.
InequalityVerdict check_dfem(const SmoothPoint& model, const SweepOptions& options = {});

/// min_j x_j <= x_i <= A for every coordinate.
InequalityVerdict check_valuation_chain(const SmoothPoint& model, const SweepOptions& options = {});

/// max{2, ceil(x_max / x_min)}. Throws InternalConsistency if it exceeds 2 x_max / x_min.
long skewness_s(const WeightVector& x);

/// The per-sample margin the sweep `suite` records for x.
Rational suite_margin(std::string_view suite, const SingularityModel& model, const WeightVector& x);

inline constexpr std::string_view kSuites[] = {"thm13", "skew2", "dfem", "proper", "thm12"};

/// Runs a named suite ("all" or one of kSuites) over smooth points n = 2..5;
/// proper also runs on A^2_1 and A^3_1.
std::vector<InequalityVerdict> run_suite(std::string_view suite, const SweepOptions& options = {});

}  // namespace hvol
