#include "doctest.h"

#include "hvol/families.hpp"
#include "hvol/golden.hpp"
#include "hvol/io.hpp"
#include "test_support.hpp"

#include <filesystem>

using namespace hvol;
using namespace hvol::testing;

namespace {

ErrorKind parse_error(const char* text)
{
    try {
        parse_model_text(text);
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected a parse error for " << text);
    return ErrorKind::InternalConsistency;
}

}  // namespace

TEST_CASE("model documents parse")
{
    auto s = parse_model_text(R"({"kind":"smooth","dim":3})");
    CHECK(std::get<SmoothPoint>(s.model).dim == 3);
    CHECK(s.name.empty());

    auto h = parse_model_text(R"({"kind":"hypersurface","name":"A","support":[[2,0,0],[0,2,0],[0,0,3]]})");
    CHECK(h.name == "A");
    CHECK(std::get<Hypersurface>(h.model) == a_singularity(2, 3));

    auto t = parse_model_text(R"({"kind":"toric","generators":[[1,0],[1,2]],"gamma":["1",0]})");
    CHECK(std::get<ToricCone>(t.model).index() == 2);

    auto c = parse_model_text(
        R"({"kind":"cone","base_dim":1,"r":2,"breakpoints":["0","1"],"pieces":[["2/2",-1]]})");
    REQUIRE(c.is_cone());
    CHECK(c.cone() == projective_cone(2));
    CHECK_THROWS_AS(c.singularity(), Error);
    CHECK_THROWS_AS(s.cone(), Error);
}

TEST_CASE("schema violations")
{
    CHECK(parse_error(R"({"kind":"smooth","dim":3,"extra":1})") == ErrorKind::Schema);
    CHECK(parse_error(R"({"kind":"smooth"})") == ErrorKind::Schema);
    CHECK(parse_error(R"({"kind":"blob"})") == ErrorKind::Schema);
    CHECK(parse_error(R"({"dim":3})") == ErrorKind::Schema);
    CHECK(parse_error(R"([1,2])") == ErrorKind::Schema);
    CHECK(parse_error(R"({"kind":"smooth","dim":"3"})") == ErrorKind::Schema);
    CHECK(parse_error(R"({"kind":"smooth","dim":3.5})") == ErrorKind::Schema);
    CHECK(parse_error(R"({"kind":"smooth",)") == ErrorKind::Schema);
    CHECK(parse_error(R"({"kind":"toric","generators":[[1,0],[0,1]],"gamma":["1","1/0"]})") == ErrorKind::Schema);
    CHECK(parse_error(R"({"kind":"toric","generators":[[1,0],[0,1]],"gamma":[1.5,1]})") == ErrorKind::Schema);
    CHECK(parse_error(R"({"kind":"hypersurface","support":[[2,0],[0,"2"]]})") == ErrorKind::Schema);
    CHECK(parse_error(R"({"kind":"hypersurface","support":[[2,0],[0,2]],"allow_smooth_germ":1})") ==
          ErrorKind::Schema);
    // Structurally valid, mathematically invalid.
    CHECK(parse_error(R"({"kind":"hypersurface","support":[[1,0],[0,2]]})") == ErrorKind::InvalidModel);
    CHECK(parse_error(R"({"kind":"toric","generators":[[1,0],[0,1]],"gamma":["1","2"]})") == ErrorKind::InvalidModel);
    CHECK(parse_error(R"({"kind":"cone","base_dim":1,"r":2,"breakpoints":["0","1"],"pieces":[["1","1"]]})") ==
          ErrorKind::InvalidCurve);
    CHECK_THROWS_AS(load_model_file("/nonexistent/model.json"), Error);
}

TEST_CASE("canonical form round-trips")
{
    std::vector<ModelFile> files{
        {"", SmoothPoint::make(4)},
        {"plane", SmoothPoint::make(2)},
        {"", a_singularity(3, 1)},
        {"", e_singularity(Family::E8, 2)},
        {"", ToricCone::make({{1, 0, 0}, {0, 1, 0}, {1, 1, 2}}, {Q("1"), Q("1"), Q("-1/2")})},
    };
    for (const auto& nc : fujita_catalog()) files.push_back({nc.name, nc.cone});
    for (const auto& f : files) {
        std::string text = canonical_text(f);
        CAPTURE(text);
        auto back = parse_model_text(text);
        CHECK(back == f);
        CHECK(canonical_text(back) == text);
    }
    auto messy = parse_model_text(R"({"r":"4/2","pieces":[["1","-1"]],"kind":"cone","breakpoints":[0,"2/2"],"base_dim":1})");
    CHECK(canonical_text(messy) == R"({"base_dim":1,"breakpoints":["0","1"],"kind":"cone","pieces":[["1","-1"]],"r":"2"})");
}

TEST_CASE("every table model round-trips")
{
    for (int n = 1; n <= 6; ++n) {
        for (int k = 1; k <= 6; ++k) {
            if (n >= 2) {
                ModelFile f{"", a_singularity(n, k)};
                CHECK(parse_model_text(canonical_text(f)) == f);
            }
            if (k >= 3) {
                ModelFile f{"", d_singularity(n, k)};
                CHECK(parse_model_text(canonical_text(f)) == f);
            }
        }
        for (Family e : {Family::E6, Family::E7, Family::E8}) {
            ModelFile f{"", e_singularity(e, n)};
            CHECK(parse_model_text(canonical_text(f)) == f);
        }
    }
}

TEST_CASE("shipped model files load")
{
    int count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(HVOL_MODELS_DIR)) {
        CAPTURE(entry.path().string());
        CHECK_NOTHROW(load_model_file(entry.path()));
        ++count;
    }
    CHECK(count >= 10);
}

TEST_CASE("report serialization")
{
    SingularityModel m = a_singularity(2, 3);
    auto j = to_json(normalized_volume(m, W("1,1,2/3")));
    CHECK(j["hvol"] == "4/3");
    CHECK(j["log_discrepancy"] == "2/3");
    CHECK(j["hvol_float"].get<double>() == 1.33333333333);
    CHECK(j["skewness"].is_null());
    CHECK(real_json(1.0 / 3).dump() == "0.333333333333");
    CHECK(real_json(1e300 * 1e300).is_null());
    CHECK(rational_json(Q("6/4")) == "3/2");
}

TEST_CASE("golden tables")
{
    const auto& table = golden_table();
    CHECK(table.size() == 72);
    const GoldenEntry* e7 = find_golden(Family::E7, 2, 0);
    REQUIRE(e7 != nullptr);
    CHECK(*e7->exact_value == Q("250/27"));
    CHECK_FALSE(e7->source.empty());
    const GoldenEntry* d = find_golden(Family::D, 2, 4);
    REQUIRE(d != nullptr);
    CHECK_FALSE(d->exact_value.has_value());
    CHECK(d->normalized_weight()[2] == doctest::Approx(std::sqrt(3.0) - 1).epsilon(1e-12));
    CHECK(find_golden(Family::A, 9, 9) == nullptr);
    // Every A entry at k = 1 is the smooth value n^n.
    for (int n = 2; n <= 6; ++n)
        CHECK(*find_golden(Family::A, n, 1)->exact_value == ipow(Rational(n), static_cast<unsigned>(n)));
}
