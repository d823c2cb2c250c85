#pragma once

#include <functional>
#include <span>
#include <vector>

namespace hvol {

struct NelderMeadOptions {
    double initial_step = 0.25;
    double x_tolerance = 1e-10;   // max distance of any vertex from the best one
    double f_tolerance = 1e-15;   // spread of the simplex values
    int max_evaluations = 20000;
    int restarts = 2;             // fresh simplices built around the incumbent
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0;
    int evaluations = 0;
    bool converged = false;
};

/// Derivative-free simplex minimization. The objective may return +inf to
/// reject a point; the start point must be finite.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::vector<double> start, const NelderMeadOptions& options = {});

}  // namespace hvol
