#pragma once

#include "hvol/fujita.hpp"
#include "hvol/inequality.hpp"
#include "hvol/lattice.hpp"
#include "hvol/model.hpp"
#include "hvol/optimizer.hpp"
#include "hvol/valuation.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace hvol {

using Json = nlohmann::json;

/// A parsed model document: a singularity germ or a cone over a polarized base.
struct ModelFile {
    std::string name;  // optional label, empty when absent
    std::variant<SmoothPoint, Hypersurface, ToricCone, ConeModel> model;

    bool is_cone() const noexcept { return std::holds_alternative<ConeModel>(model); }
    SingularityModel singularity() const;  // throws Schema for cone documents
    const ConeModel& cone() const;         // throws Schema otherwise

    bool operator==(const ModelFile&) const = default;
};

/// Reads a model document. Rational fields accept "p/q" strings or integers.
/// Unknown or missing fields raise Schema; model invariants raise InvalidModel
/// or InvalidCurve.
ModelFile parse_model(const Json& doc);
ModelFile parse_model_text(std::string_view text);
ModelFile load_model_file(const std::filesystem::path& path);

/// Canonical JSON: sorted keys, rationals as lowest-terms strings.
Json to_json(const ModelFile& file);

/// Compact dump of to_json; parse_model_text(canonical_text(m)) == m.
std::string canonical_text(const ModelFile& file);

Json rational_json(const Rational& q);
/// A JSON number carrying 12 significant digits; null when not finite.
Json real_json(double x);
Json weight_json(const WeightVector& x);
Json real_weight_json(const RealWeight& x);

Json to_json(const ValuationReport& report);
Json to_json(const MinimizationResult& result);
Json to_json(const ColengthSeries& series);
Json to_json(const InequalityVerdict& verdict);

}  // namespace hvol
