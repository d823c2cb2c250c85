#include "hvol/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace hvol {

namespace {

struct Simplex {
    std::vector<std::vector<double>> points;
    std::vector<double> values;
};

double spread(const Simplex& s, std::size_t best)
{
    double d = 0;
    for (const auto& p : s.points)
        for (std::size_t k = 0; k < p.size(); ++k) d = std::max(d, std::abs(p[k] - s.points[best][k]));
    return d;
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> start,
                             const NelderMeadOptions& options)
{
    const std::size_t n = start.size();
    NelderMeadResult result;
    result.x = start;
    result.value = f(start);
    result.evaluations = 1;
    if (n == 0) {
        result.converged = true;
        return result;
    }

    auto eval = [&](const std::vector<double>& p) {
        ++result.evaluations;
        double v = f(p);
        return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    };

    for (int round = 0; round <= options.restarts; ++round) {
        double step = options.initial_step / (1 << round);
        Simplex s;
        s.points.push_back(result.x);
        s.values.push_back(result.value);
        for (std::size_t k = 0; k < n; ++k) {
            auto p = result.x;
            p[k] += step;
            double v = eval(p);
            if (!std::isfinite(v)) {
                p[k] = result.x[k] - step;
                v = eval(p);
            }
            s.points.push_back(std::move(p));
            s.values.push_back(v);
        }

        std::vector<std::size_t> order(n + 1);
        bool converged = false;
        while (result.evaluations < options.max_evaluations) {
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&](auto a, auto b) { return s.values[a] < s.values[b]; });
            std::size_t best = order.front(), worst = order.back(), second = order[n - 1];
            if (spread(s, best) < options.x_tolerance &&
                std::abs(s.values[worst] - s.values[best]) <= options.f_tolerance * (1 + std::abs(s.values[best]))) {
                converged = true;
                break;
            }

            std::vector<double> centroid(n, 0.0);
            for (std::size_t i = 0; i <= n; ++i)
                if (i != worst)
                    for (std::size_t k = 0; k < n; ++k) centroid[k] += s.points[i][k] / n;
            auto along = [&](double t) {
                std::vector<double> p(n);
                for (std::size_t k = 0; k < n; ++k) p[k] = centroid[k] + t * (s.points[worst][k] - centroid[k]);
                return p;
            };

            auto reflected = along(-1.0);
            double fr = eval(reflected);
            if (fr < s.values[best]) {
                auto expanded = along(-2.0);
                double fe = eval(expanded);
                if (fe < fr) s.points[worst] = std::move(expanded), s.values[worst] = fe;
                else s.points[worst] = std::move(reflected), s.values[worst] = fr;
                continue;
            }
            if (fr < s.values[second]) {
                s.points[worst] = std::move(reflected);
                s.values[worst] = fr;
                continue;
            }
            bool outside = fr < s.values[worst];
            auto contracted = along(outside ? -0.5 : 0.5);
            double fc = eval(contracted);
            if (fc < (outside ? fr : s.values[worst])) {
                s.points[worst] = std::move(contracted);
                s.values[worst] = fc;
                continue;
            }
            for (std::size_t i = 0; i <= n; ++i) {
                if (i == best) continue;
                for (std::size_t k = 0; k < n; ++k)
                    s.points[i][k] = s.points[best][k] + 0.5 * (s.points[i][k] - s.points[best][k]);
                s.values[i] = eval(s.points[i]);
            }
        }

        std::size_t best = static_cast<std::size_t>(
            std::min_element(s.values.begin(), s.values.end()) - s.values.begin());
        bool improved = s.values[best] < result.value;
        if (s.values[best] <= result.value) {
            result.x = s.points[best];
            result.value = s.values[best];
        }
        result.converged = converged;
        if (!converged) break;
        if (round > 0 && !improved) break;
    }
    return result;
}

}  // namespace hvol
