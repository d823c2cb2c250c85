#pragma once

#include "hvol/families.hpp"
#include "hvol/optimizer.hpp"
#include "hvol/rational.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hvol {

using GoldenCoordinate = std::variant<Rational, double>;

struct GoldenEntry {
    Family family;
    int n = 0;
    int k = 0;  // 0 for the E families
    std::vector<GoldenCoordinate> weight;
    std::optional<Rational> exact_value;
    double value = 0;
    std::string source;

    std::vector<double> normalized_weight() const;  // max coordinate 1
};

/// The tables compiled into the binary.
const std::vector<GoldenEntry>& golden_table();

const GoldenEntry* find_golden(Family family, int n, int k);

struct GoldenComparison {
    bool matches = false;
    double weight_error = 0;  // max coordinate gap after normalizing both to max 1
    double value_error = 0;   // relative
};

/// Exact entries need the exact weight and value; the rest are compared to
/// 1e-6 on weights and 1e-7 relative on values.
GoldenComparison compare_golden(const GoldenEntry& entry, const MinimizationResult& result);

}  // namespace hvol
