#include "hvol/golden.hpp"

#include "golden_data.hpp"
#include "hvol/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace hvol {

namespace {

GoldenCoordinate read_coordinate(const nlohmann::json& v)
{
    if (v.is_string()) return parse_rational(v.get<std::string>());
    return v.get<double>();
}

double as_double(const GoldenCoordinate& c)
{
    return std::visit([](const auto& x) { return to_double(x); }, c);
}

std::vector<GoldenEntry> load()
{
    auto doc = nlohmann::json::parse(detail::kGoldenTablesJson);
    std::vector<GoldenEntry> out;
    for (const auto& e : doc.at("entries")) {
        GoldenEntry g;
        g.family = parse_family(e.at("family").get<std::string>());
        g.n = e.at("n").get<int>();
        g.k = e.at("k").get<int>();
        for (const auto& c : e.at("weight")) g.weight.push_back(read_coordinate(c));
        const auto& v = e.at("value");
        if (v.is_string()) {
            g.exact_value = parse_rational(v.get<std::string>());
            g.value = g.exact_value->get_d();
        } else {
            g.value = v.get<double>();
        }
        g.source = e.at("source").get<std::string>();
        out.push_back(std::move(g));
    }
    return out;
}

}  // namespace

std::vector<double> GoldenEntry::normalized_weight() const
{
    std::vector<double> w;
    for (const auto& c : weight) w.push_back(as_double(c));
    double m = *std::max_element(w.begin(), w.end());
    for (auto& c : w) c /= m;
    return w;
}

const std::vector<GoldenEntry>& golden_table()
{
    static const std::vector<GoldenEntry> table = load();
    return table;
}

const GoldenEntry* find_golden(Family family, int n, int k)
{
    bool e_family = family == Family::E6 || family == Family::E7 || family == Family::E8;
    for (const auto& g : golden_table())
        if (g.family == family && g.n == n && (e_family || g.k == k)) return &g;
    return nullptr;
}

GoldenComparison compare_golden(const GoldenEntry& entry, const MinimizationResult& result)
{
    GoldenComparison c;
    auto expected = entry.normalized_weight();
    if (expected.size() != result.weight.size()) return c;
    for (std::size_t i = 0; i < expected.size(); ++i)
        c.weight_error = std::max(c.weight_error, std::abs(expected[i] - result.weight[i]));
    c.value_error = std::abs(result.value - entry.value) / std::abs(entry.value);

    bool exact_entry = entry.exact_value &&
                       std::all_of(entry.weight.begin(), entry.weight.end(),
                                   [](const auto& x) { return std::holds_alternative<Rational>(x); });
    if (exact_entry) {
        if (!result.exact_weight || !result.exact_value) return c;
        std::vector<Rational> w;
        for (const auto& x : entry.weight) w.push_back(std::get<Rational>(x));
        Rational top = *std::max_element(w.begin(), w.end());
        for (auto& x : w) x /= top;
        c.matches = *result.exact_value == *entry.exact_value && WeightVector(w) == *result.exact_weight;
    } else {
        c.matches = c.weight_error <= 1e-6 && c.value_error <= 1e-7;
    }
    return c;
}

}  // namespace hvol
