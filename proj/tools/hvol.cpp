// hvol: normalized volumes of monomial valuations from the command line.

#include "hvol/error.hpp"
#include "hvol/families.hpp"
#include "hvol/fujita.hpp"
#include "hvol/golden.hpp"
#include "hvol/inequality.hpp"
#include "hvol/io.hpp"
#include "hvol/lattice.hpp"
#include "hvol/optimizer.hpp"
#include "hvol/valuation.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace hvol;

namespace {

enum Exit { Ok = 0, Failure = 1, BadInput = 2, BadDomain = 3, NotConverged = 4, TableDeviation = 5 };

int exit_code(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Schema:
    case ErrorKind::InvalidModel:
    case ErrorKind::InvalidCurve:
    case ErrorKind::UnsupportedModel: return BadInput;
    case ErrorKind::Domain:
    case ErrorKind::NonKltWeight:
    case ErrorKind::NonKltModel:
    case ErrorKind::InvalidWeight:
    case ErrorKind::Capacity: return BadDomain;
    case ErrorKind::InternalConsistency: return Failure;
    }
    return Failure;
}

void log(const std::string& msg) { std::cerr << "hvol: " << msg << '\n'; }

std::string csv_quote(const std::string& s)
{
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

std::string join(const std::vector<std::string>& parts, const char* sep = ",")
{
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
    return out;
}

std::string weight_text(const MinimizationResult& r)
{
    if (r.exact_weight) return to_string(*r.exact_weight);
    std::vector<std::string> parts;
    for (double c : r.weight) parts.push_back(format_double(c));
    return join(parts);
}

std::string value_text(const MinimizationResult& r)
{
    return r.exact_value ? to_string(*r.exact_value) : format_double(r.value);
}

// "2..6", "2-6", "2:6", "4" or "1,3,5".
std::vector<int> parse_range(const std::string& text)
{
    auto to_int = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            int v = std::stoi(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            fail(ErrorKind::Schema, "malformed range '" + text + "'");
        }
    };
    std::vector<int> out;
    if (text.find(',') != std::string::npos) {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(to_int(item));
        return out;
    }
    for (const char* sep : {"..", "-", ":"}) {
        auto pos = text.find(sep, 1);
        if (pos == std::string::npos) continue;
        int lo = to_int(text.substr(0, pos)), hi = to_int(text.substr(pos + std::string(sep).size()));
        if (lo > hi) fail(ErrorKind::Schema, "empty range '" + text + "'");
        for (int i = lo; i <= hi; ++i) out.push_back(i);
        return out;
    }
    out.push_back(to_int(text));
    return out;
}

std::vector<Rational> parse_radii(const std::string& text)
{
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
    return out;
}

void print_json(const Json& j) { std::cout << j.dump(2) << '\n'; }

struct Globals {
    std::string format;  // empty: the subcommand default
};

int cmd_compute(const Globals& g, const std::string& path, const std::string& weight)
{
    auto file = load_model_file(path);
    SingularityModel model = file.singularity();
    WeightVector x = parse_weight(weight);
    check_weight_length(model, x);
    auto report = normalized_volume(model, x);
    Json j = to_json(report);
    j["kind"] = kind_name(model);
    j["weight"] = weight_json(x);
    if (g.format == "text") {
        std::cout << "hvol " << to_string(report.normalized_volume) << " (" << format_double(report.normalized_volume.get_d())
                  << ")\nA " << to_string(report.log_discrepancy) << "\nvol " << to_string(report.volume) << "\nv(m) "
                  << to_string(report.ideal_value) << '\n';
    } else if (g.format == "csv") {
        std::cout << "weight,log_discrepancy,volume,hvol,ideal_value\n"
                  << csv_quote(to_string(x)) << ',' << to_string(report.log_discrepancy) << ','
                  << to_string(report.volume) << ',' << to_string(report.normalized_volume) << ','
                  << to_string(report.ideal_value) << '\n';
    } else {
        print_json(j);
    }
    return Ok;
}

int cmd_minimize(const Globals& g, const std::string& path, const MinimizeOptions& options)
{
    auto file = load_model_file(path);
    auto r = minimize_hvol(file.singularity(), options);
    if (g.format == "text") {
        std::cout << "weight " << weight_text(r) << "\nvalue " << value_text(r) << "\nstatus " << to_string(r.status)
                  << '\n';
    } else if (g.format == "csv") {
        std::cout << "weight,value,status\n"
                  << csv_quote(weight_text(r)) << ',' << value_text(r) << ',' << to_string(r.status) << '\n';
    } else {
        print_json(to_json(r));
    }
    if (r.status != MinimizeStatus::Converged) {
        log(std::string("minimization ended with status ") + to_string(r.status));
        return NotConverged;
    }
    return Ok;
}

struct TableOptions {
    std::string family;
    std::string n_range;  // default per family
    std::string k_range;
    std::string emit_dir;
    MinimizeOptions minimize;
};

int cmd_table(const Globals& g, const TableOptions& t)
{
    Family family = parse_family(t.family);
    bool e_family = family == Family::E6 || family == Family::E7 || family == Family::E8;
    const bool a_family = family == Family::A;
    auto ns = parse_range(!t.n_range.empty() ? t.n_range : a_family ? "2..6" : "1..5");
    auto ks = e_family ? std::vector<int>{0} : parse_range(!t.k_range.empty() ? t.k_range : a_family ? "1..6" : "3..6");
    if (!t.emit_dir.empty()) std::filesystem::create_directories(t.emit_dir);

    Json rows = Json::array();
    bool deviation = false;
    if (g.format == "csv") std::cout << "family,n,k,weight,value,exact,matches\n";
    for (int n : ns) {
        for (int k : ks) {
            Hypersurface h = family_member(family, n, k);
            if (!t.emit_dir.empty()) {
                ModelFile file{std::string(family_name(family)) + " n=" + std::to_string(n) +
                                   (e_family ? "" : " k=" + std::to_string(k)),
                               h};
                std::string text = canonical_text(file);
                if (!(parse_model_text(text) == file) || canonical_text(parse_model_text(text)) != text)
                    fail(ErrorKind::InternalConsistency, "emitted model does not round-trip");
                std::string stem = std::string(family_name(family)) + "_n" + std::to_string(n) +
                                   (e_family ? "" : "_k" + std::to_string(k));
                std::ofstream(std::filesystem::path(t.emit_dir) / (stem + ".json")) << text << '\n';
            }
            auto r = minimize_hvol(h, t.minimize);
            const GoldenEntry* golden = find_golden(family, n, k);
            std::string matches = "unknown";
            GoldenComparison cmp;
            if (golden) {
                cmp = compare_golden(*golden, r);
                matches = cmp.matches ? "true" : "false";
                if (!cmp.matches) {
                    deviation = true;
                    log(std::string(family_name(family)) + " n=" + std::to_string(n) + " k=" + std::to_string(k) +
                        " deviates: weight error " + format_double(cmp.weight_error) + ", value error " +
                        format_double(cmp.value_error));
                }
            }
            if (g.format == "csv") {
                std::cout << family_name(family) << ',' << n << ',' << k << ',' << csv_quote(weight_text(r)) << ','
                          << value_text(r) << ',' << (r.exact_value ? "true" : "false") << ',' << matches << '\n';
            } else if (g.format == "text") {
                std::printf("%-3s n=%-2d k=%-2d %-40s %-22s %s\n", family_name(family), n, k, weight_text(r).c_str(),
                            value_text(r).c_str(), matches.c_str());
            } else {
                Json row = to_json(r);
                row["family"] = family_name(family);
                row["n"] = n;
                row["k"] = k;
                row["matches"] = golden ? Json(cmp.matches) : Json(nullptr);
                if (golden) row["golden_source"] = golden->source;
                rows.push_back(row);
            }
        }
    }
    if (g.format == "json") print_json(rows);
    return deviation ? TableDeviation : Ok;
}

int cmd_oracle(const Globals& g, const std::string& path, const std::string& weight, const std::string& radii)
{
    auto file = load_model_file(path);
    SingularityModel model = file.singularity();
    WeightVector x = parse_weight(weight);
    check_weight_length(model, x);
    auto rs = radii.empty() ? default_radii(x) : parse_radii(radii);
    auto series = estimate_volume(model, x, rs);
    Rational exact = volume(model, x);
    if (g.format == "json") {
        Json j;
        j["rows"] = to_json(series);
        j["volume"] = rational_json(exact);
        j["volume_float"] = real_json(exact.get_d());
        j["relative_error"] = real_json(std::abs(series.last_estimate() - exact.get_d()) / exact.get_d());
        print_json(j);
    } else {
        if (g.format == "csv") std::cout << "r,colength,vol_estimate\n";
        for (std::size_t i = 0; i < series.radii.size(); ++i)
            std::cout << to_string(series.radii[i]) << (g.format == "csv" ? "," : " ") << series.colengths[i]
                      << (g.format == "csv" ? "," : " ") << format_double(series.vol_estimates[i]) << '\n';
    }
    return Ok;
}

int cmd_verify(const Globals& g, const std::string& suite, const SweepOptions& options)
{
    auto verdicts = run_suite(suite, options);
    bool all = true;
    Json list = Json::array();
    for (const auto& v : verdicts) {
        all = all && v.passed;
        list.push_back(to_json(v));
        if (!v.passed) log(v.name + " failed on " + v.config + (v.note.empty() ? "" : ": " + v.note));
    }
    if (g.format == "json") {
        Json j;
        j["scope"] = "monomial valuations; hypersurface samples lie where the two smallest monomials tie";
        j["seed"] = options.seed;
        j["samples"] = options.samples;
        j["verdicts"] = list;
        j["passed"] = all;
        print_json(j);
    } else {
        if (g.format == "csv") std::cout << "name,config,samples,min_margin,estimate,passed\n";
        for (const auto& v : verdicts) {
            std::string est = v.estimate ? format_double(*v.estimate) : "";
            if (g.format == "csv")
                std::cout << v.name << ',' << csv_quote(v.config) << ',' << v.samples << ','
                          << format_double(v.min_margin) << ',' << est << ',' << (v.passed ? "true" : "false") << '\n';
            else
                std::printf("%-7s %-16s %-6s margin %-14s %s\n", v.name.c_str(), v.config.c_str(),
                            v.passed ? "pass" : "FAIL", format_double(v.min_margin).c_str(), est.c_str());
        }
    }
    return all ? Ok : Failure;
}

int cmd_fujita(const Globals& g, const std::string& path, int grid)
{
    auto file = load_model_file(path);
    const ConeModel& cone = file.cone();
    Rational e = eta(cone);
    Rational d = phi_prime_zero(cone);
    auto convexity = convexity_check(cone, grid);
    Rational f0 = convexity.values.front(), f1 = convexity.values.back();
    auto decrease = find_phi_decrease(cone);

    Json samples = Json::array();
    for (const char* b : {"0", "1/10", "1/4", "1/2", "1", "2", "4", "10"}) {
        Rational beta = parse_rational(b);
        Rational v = phi(cone, beta);
        samples.push_back({{"beta", b}, {"phi", rational_json(v)}, {"phi_float", real_json(v.get_d())}});
    }
    samples.push_back({{"beta", "inf"}, {"phi", rational_json(f1)}, {"phi_float", real_json(f1.get_d())}});

    Json j;
    j["eta"] = rational_json(e);
    j["phi_prime_zero"] = rational_json(d);
    j["convex"] = convexity.convex;
    j["min_second_difference"] = real_json(convexity.min_second_difference.get_d());
    j["f0"] = rational_json(f0);
    j["f1"] = rational_json(f1);
    j["f0_float"] = real_json(f0.get_d());
    j["f1_float"] = real_json(f1.get_d());
    j["phi_decrease_beta"] = decrease ? rational_json(*decrease) : Json(nullptr);
    j["phi_samples"] = samples;
    if (g.format == "text") {
        std::cout << "eta " << to_string(e) << "\nphi'(0) " << to_string(d) << "\nf(0) " << to_string(f0) << "\nf(1) "
                  << to_string(f1) << "\nconvex " << (convexity.convex ? "yes" : "no") << '\n';
    } else if (g.format == "csv") {
        std::cout << "beta,phi\n";
        for (const auto& s : samples) std::cout << s["beta"].get<std::string>() << ',' << s["phi"].get<std::string>() << '\n';
    } else {
        print_json(j);
    }
    return Ok;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Normalized volumes of monomial valuations on klt singularities"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--format", g.format, "json, csv or text (default: csv for table and oracle, json otherwise)")
        ->check(CLI::IsMember({"json", "csv", "text"}));

    std::string model_path, weight, radii, suite = "all";
    MinimizeOptions minimize;
    TableOptions table;
    SweepOptions sweep;
    int grid = 101;

    auto* compute = app.add_subcommand("compute", "A, vol and hvol of one monomial valuation");
    compute->add_option("model", model_path, "Model JSON file")->required();
    compute->add_option("--weight", weight, "Weight, e.g. 1,1,2/3")->required();

    auto* minimize_cmd = app.add_subcommand("minimize", "Minimize hvol over monomial valuations");
    minimize_cmd->add_option("model", model_path, "Model JSON file")->required();
    minimize_cmd->add_option("--starts", minimize.starts, "Multi-start count")->capture_default_str();
    minimize_cmd->add_option("--seed", minimize.seed, "Random seed")->capture_default_str();

    auto* table_cmd = app.add_subcommand("table", "Minimizers across a family, compared with the built-in tables");
    table_cmd->add_option("--family", table.family, "A, D, E6, E7 or E8")->required();
    table_cmd->add_option("--n-range", table.n_range, "n values, e.g. 2..6 (default 2..6 for A, 1..5 otherwise)");
    table_cmd->add_option("--k-range", table.k_range, "k values for A and D (default 1..6 for A, 3..6 for D)");
    table_cmd->add_option("--emit-models", table.emit_dir, "Write each model JSON into this directory");
    table_cmd->add_option("--starts", table.minimize.starts, "Multi-start count")->capture_default_str();
    table_cmd->add_option("--seed", table.minimize.seed, "Random seed")->capture_default_str();

    auto* oracle = app.add_subcommand("oracle", "Lattice-point volume estimates");
    oracle->add_option("model", model_path, "Model JSON file")->required();
    oracle->add_option("--weight", weight, "Weight, e.g. 1,1")->required();
    oracle->add_option("--radii", radii, "Comma-separated radii (default: geometric schedule)");

    auto* verify = app.add_subcommand("verify", "Run the inequality sweeps");
    verify->add_option("--suite", suite, "all, thm13, skew2, dfem, proper or thm12")->capture_default_str();
    verify->add_option("--samples", sweep.samples, "Samples per configuration")->capture_default_str();
    verify->add_option("--seed", sweep.seed, "Random seed")->capture_default_str();

    auto* fujita = app.add_subcommand("fujita", "eta, phi'(0) and convexity for a cone");
    fujita->add_option("model", model_path, "Cone JSON file")->required();
    fujita->add_option("--grid", grid, "Grid points in [0, 1]")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return BadInput;
    }
    if (g.format.empty()) g.format = table_cmd->parsed() || oracle->parsed() ? "csv" : "json";

    try {
        if (compute->parsed()) return cmd_compute(g, model_path, weight);
        if (minimize_cmd->parsed()) return cmd_minimize(g, model_path, minimize);
        if (table_cmd->parsed()) return cmd_table(g, table);
        if (oracle->parsed()) return cmd_oracle(g, model_path, weight, radii);
        if (verify->parsed()) return cmd_verify(g, suite, sweep);
        if (fujita->parsed()) return cmd_fujita(g, model_path, grid);
    } catch (const Error& e) {
        log(std::string(to_string(e.kind())) + ": " + e.what());
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        log(e.what());
        return Failure;
    }
    return Failure;
}
