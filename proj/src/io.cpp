#include "hvol/io.hpp"

#include "hvol/error.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace hvol {

namespace {

[[noreturn]] void schema(const std::string& msg) { fail(ErrorKind::Schema, msg); }

void expect_fields(const Json& doc, std::initializer_list<const char*> required,
                   std::initializer_list<const char*> optional = {})
{
    if (!doc.is_object()) schema("model document must be a JSON object");
    std::set<std::string> known;
    for (const char* f : required) {
        known.insert(f);
        if (!doc.contains(f)) schema(std::string("missing field \"") + f + "\"");
    }
    for (const char* f : optional) known.insert(f);
    for (const auto& [key, value] : doc.items())
        if (!known.count(key)) schema("unknown field \"" + key + "\"");
}

Rational read_rational(const Json& v, const char* what)
{
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(mpz_class(v.dump()));
    schema(std::string(what) + ": expected a \"p/q\" string or an integer");
}

long read_int(const Json& v, const char* what)
{
    if (!v.is_number_integer()) schema(std::string(what) + ": expected an integer");
    return v.get<long>();
}

std::vector<Rational> read_rationals(const Json& v, const char* what)
{
    if (!v.is_array()) schema(std::string(what) + ": expected an array");
    std::vector<Rational> out;
    for (const auto& e : v) out.push_back(read_rational(e, what));
    return out;
}

template <class Int>
std::vector<Int> read_ints(const Json& v, const char* what)
{
    if (!v.is_array()) schema(std::string(what) + ": expected an array");
    std::vector<Int> out;
    for (const auto& e : v) {
        long x = read_int(e, what);
        if (x < std::numeric_limits<Int>::min() || x > std::numeric_limits<Int>::max())
            schema(std::string(what) + ": integer out of range");
        out.push_back(static_cast<Int>(x));
    }
    return out;
}

Json rationals_json(std::span<const Rational> values)
{
    Json a = Json::array();
    for (const auto& q : values) a.push_back(rational_json(q));
    return a;
}

}  // namespace

SingularityModel ModelFile::singularity() const
{
    return std::visit(
        [](const auto& m) -> SingularityModel {
            if constexpr (std::is_same_v<std::decay_t<decltype(m)>, ConeModel>)
                schema("a cone document is not a singularity model");
            else
                return m;
        },
        model);
}

const ConeModel& ModelFile::cone() const
{
    if (auto* c = std::get_if<ConeModel>(&model)) return *c;
    schema("expected a document of kind \"cone\"");
}

ModelFile parse_model(const Json& doc)
{
    if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string())
        schema("model document needs a string field \"kind\"");
    const std::string kind = doc["kind"].get<std::string>();
    ModelFile file;
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) schema("name: expected a string");
        file.name = doc["name"].get<std::string>();
    }
    if (kind == "smooth") {
        expect_fields(doc, {"kind", "dim"}, {"name"});
        file.model = SmoothPoint::make(static_cast<int>(read_int(doc["dim"], "dim")));
    } else if (kind == "hypersurface") {
        expect_fields(doc, {"kind", "support"}, {"name", "allow_smooth_germ"});
        if (!doc["support"].is_array()) schema("support: expected an array of exponent arrays");
        std::vector<ExponentVector> support;
        for (const auto& e : doc["support"]) support.push_back({read_ints<int>(e, "support")});
        HypersurfaceOptions opts;
        if (doc.contains("allow_smooth_germ")) {
            if (!doc["allow_smooth_germ"].is_boolean()) schema("allow_smooth_germ: expected a boolean");
            opts.allow_smooth_germ = doc["allow_smooth_germ"].get<bool>();
        }
        file.model = Hypersurface::make(std::move(support), opts);
    } else if (kind == "toric") {
        expect_fields(doc, {"kind", "generators", "gamma"}, {"name"});
        if (!doc["generators"].is_array()) schema("generators: expected an array of integer arrays");
        std::vector<ToricCone::IntVector> gens;
        for (const auto& g : doc["generators"]) gens.push_back(read_ints<std::int64_t>(g, "generators"));
        file.model = ToricCone::make(std::move(gens), read_rationals(doc["gamma"], "gamma"));
    } else if (kind == "cone") {
        expect_fields(doc, {"kind", "base_dim", "r", "breakpoints", "pieces"}, {"name"});
        if (!doc["pieces"].is_array()) schema("pieces: expected an array of coefficient arrays");
        std::vector<Polynomial> pieces;
        for (const auto& p : doc["pieces"]) pieces.push_back({read_rationals(p, "pieces")});
        auto curve = VolumeCurve::make(static_cast<int>(read_int(doc["base_dim"], "base_dim")),
                                       read_rationals(doc["breakpoints"], "breakpoints"), std::move(pieces));
        file.model = ConeModel::make(read_rational(doc["r"], "r"), std::move(curve));
    } else {
        schema("unknown kind \"" + kind + "\"");
    }
    return file;
}

ModelFile parse_model_text(std::string_view text)
{
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        schema(std::string("malformed JSON: ") + e.what());
    }
    return parse_model(doc);
}

ModelFile load_model_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) schema("cannot read " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_model_text(buffer.str());
}

Json rational_json(const Rational& q) { return to_string(q); }

Json real_json(double x)
{
    if (!std::isfinite(x)) return nullptr;
    return std::stod(format_double(x));
}

Json weight_json(const WeightVector& x) { return rationals_json(x.coords()); }

Json real_weight_json(const RealWeight& x)
{
    Json a = Json::array();
    for (double c : x) a.push_back(real_json(c));
    return a;
}

Json to_json(const ModelFile& file)
{
    Json doc = std::visit(
        [](const auto& m) -> Json {
            using T = std::decay_t<decltype(m)>;
            Json d;
            if constexpr (std::is_same_v<T, SmoothPoint>) {
                d["kind"] = "smooth";
                d["dim"] = m.dim;
            } else if constexpr (std::is_same_v<T, Hypersurface>) {
                d["kind"] = "hypersurface";
                Json s = Json::array();
                for (const auto& e : m.support()) s.push_back(e.entries);
                d["support"] = s;
                if (m.allows_smooth_germ()) d["allow_smooth_germ"] = true;
            } else if constexpr (std::is_same_v<T, ToricCone>) {
                d["kind"] = "toric";
                Json g = Json::array();
                for (const auto& v : m.generators()) g.push_back(v);
                d["generators"] = g;
                d["gamma"] = rationals_json(m.gamma());
            } else {
                d["kind"] = "cone";
                d["base_dim"] = m.base_dim();
                d["r"] = rational_json(m.r());
                d["breakpoints"] = rationals_json(m.curve().breakpoints());
                Json pieces = Json::array();
                for (const auto& p : m.curve().pieces()) pieces.push_back(rationals_json(p.coefficients));
                d["pieces"] = pieces;
            }
            return d;
        },
        file.model);
    if (!file.name.empty()) doc["name"] = file.name;
    return doc;
}

std::string canonical_text(const ModelFile& file) { return to_json(file).dump(); }

Json to_json(const ValuationReport& r)
{
    Json j;
    j["log_discrepancy"] = rational_json(r.log_discrepancy);
    j["volume"] = rational_json(r.volume);
    j["hvol"] = rational_json(r.normalized_volume);
    j["hvol_float"] = real_json(r.normalized_volume.get_d());
    j["ideal_value"] = rational_json(r.ideal_value);
    j["skewness"] = r.skewness ? rational_json(*r.skewness) : Json(nullptr);
    return j;
}

Json to_json(const MinimizationResult& r)
{
    Json j;
    j["weight"] = r.exact_weight ? weight_json(*r.exact_weight) : real_weight_json(r.weight);
    j["weight_float"] = real_weight_json(r.weight);
    j["value"] = r.exact_value ? rational_json(*r.exact_value) : real_json(r.value);
    j["value_float"] = real_json(r.value);
    j["exact"] = r.exact_value.has_value();
    Json active = Json::array();
    for (const auto& e : r.active_monomials) active.push_back(e.entries);
    j["active_monomials"] = active;
    j["status"] = to_string(r.status);
    j["starts_used"] = r.starts_used;
    j["cells_examined"] = r.cells_examined;
    j["first_order_residual"] = real_json(r.first_order_residual);
    j["symmetry_broken"] = r.symmetry_broken;
    return j;
}

Json to_json(const ColengthSeries& s)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < s.radii.size(); ++i)
        rows.push_back({{"r", rational_json(s.radii[i])},
                        {"colength", s.colengths[i]},
                        {"vol_estimate", real_json(s.vol_estimates[i])}});
    return rows;
}

Json to_json(const InequalityVerdict& v)
{
    Json j;
    j["name"] = v.name;
    j["config"] = v.config;
    j["samples"] = v.samples;
    j["min_margin"] = real_json(v.min_margin);
    Json w = Json::array();
    for (const auto& x : v.witnesses) w.push_back(weight_json(x));
    j["witnesses"] = w;
    j["passed"] = v.passed;
    j["estimate"] = v.estimate ? real_json(*v.estimate) : Json(nullptr);
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

}  // namespace hvol
