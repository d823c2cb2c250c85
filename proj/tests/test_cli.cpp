#include "doctest.h"

#include "hvol/io.hpp"

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>
#include <sys/wait.h>

using hvol::Json;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args)
{
    std::string cmd = std::string(HVOL_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string model(const char* name) { return std::string(HVOL_MODELS_DIR) + "/" + name; }

}  // namespace

TEST_CASE("compute")
{
    auto r = run("compute " + model("smooth3.json") + " --weight 1,1,1");
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out)["hvol"] == "27");
    r = run("compute " + model("a2_2.json") + " --weight 1,1,2/3");
    CHECK(Json::parse(r.out)["hvol"] == "4/3");
    r = run("compute " + model("a3_1.json") + " --weight 1,1,1,1");
    CHECK(Json::parse(r.out)["hvol"] == "16");
    r = run("compute " + model("a2_2.json") + " --weight 1,1,2/3 --format csv");
    CHECK(r.out == "weight,log_discrepancy,volume,hvol,ideal_value\n\"1,1,2/3\",2/3,3,4/3,2/3\n");
}

TEST_CASE("exit codes")
{
    CHECK(run("compute " + model("smooth3.json") + " --weight 1,1").code == 3);
    CHECK(run("compute " + model("smooth3.json") + " --weight 1,-1,1").code == 3);
    CHECK(run("compute " + model("smooth3.json") + " --weight 1,x,1").code == 2);
    CHECK(run("compute /nonexistent.json --weight 1").code == 2);
    CHECK(run("compute " + model("toric_a1.json") + " --weight 1,3").code == 3);
    CHECK(run("bogus").code == 2);
    CHECK(run("table --family Q").code == 3);
    CHECK(run("fujita " + model("smooth3.json")).code == 2);
    CHECK(run("minimize " + model("cone_p1.json")).code == 2);

    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path() / "hvol_cli_test";
    fs::create_directories(dir);
    auto write = [&](const char* name, const char* text) {
        auto p = dir / name;
        std::FILE* f = std::fopen(p.c_str(), "w");
        std::fputs(text, f);
        std::fclose(f);
        return p.string();
    };
    CHECK(run("compute " + write("extra.json", R"({"kind":"smooth","dim":2,"x":0})") + " --weight 1,1").code == 2);
    CHECK(run("minimize " + write("cusp.json", R"({"kind":"hypersurface","support":[[3,1],[1,3]]})")).code == 3);
}

TEST_CASE("minimize")
{
    auto r = run("minimize " + model("e6_2.json"));
    CHECK(r.code == 0);
    auto j = Json::parse(r.out);
    CHECK(j["value"] == "343/36");
    CHECK(j["weight"] == Json({"1", "1", "2/3", "1/2"}));
    CHECK(j["status"] == "converged");
    CHECK(Json::parse(run("minimize " + model("e8_2.json")).out)["value"] == "2048/225");
    j = Json::parse(run("minimize " + model("smooth2.json") + " --starts 4 --seed 9").out);
    CHECK(j["value"] == "4");
    CHECK(j["weight"] == Json({"1", "1"}));
}

TEST_CASE("table")
{
    auto r = run("table --family A --n-range 2 --k-range 1..5");
    CHECK(r.code == 0);
    CHECK(r.out ==
          "family,n,k,weight,value,exact,matches\n"
          "A,2,1,\"1/2,1/2,1\",4,true,true\n"
          "A,2,2,\"1,1,1\",2,true,true\n"
          "A,2,3,\"1,1,2/3\",4/3,true,true\n"
          "A,2,4,\"1,1,1/2\",1,true,true\n"
          "A,2,5,\"1,1,2/5\",4/5,true,true\n");

    r = run("table --family D --n-range 2 --k-range 4 --format json");
    CHECK(r.code == 0);
    auto row = Json::parse(r.out)[0];
    CHECK(row["matches"] == true);
    CHECK(row["weight"][2].get<double>() == doctest::Approx(0.732050807569).epsilon(1e-9));

    r = run("table --family E7 --n-range 1..4");
    CHECK(r.code == 0);
    CHECK(r.out.find("1/12,true,true") != std::string::npos);
    CHECK(r.out.find("250/27,true,true") != std::string::npos);
    CHECK(r.out.find("32000/243,true,true") != std::string::npos);
    CHECK(r.out.find("50000/27,true,true") != std::string::npos);

    // Outside the built-in tables the flag is unknown and the exit code stays 0.
    r = run("table --family D --n-range 7 --k-range 3");
    CHECK(r.code == 0);
    CHECK(r.out.find(",unknown") != std::string::npos);
}

TEST_CASE("table --emit-models writes canonical documents")
{
    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path() / "hvol_emit_test";
    fs::remove_all(dir);
    CHECK(run("table --family E8 --n-range 1..3 --emit-models " + dir.string()).code == 0);
    int count = 0;
    for (const auto& e : fs::directory_iterator(dir)) {
        auto file = hvol::load_model_file(e.path());
        std::FILE* f = std::fopen(e.path().c_str(), "r");
        char buf[4096] = {};
        std::size_t n = std::fread(buf, 1, sizeof buf - 1, f);
        std::fclose(f);
        CHECK(std::string(buf, n) == hvol::canonical_text(file) + "\n");
        ++count;
    }
    CHECK(count == 3);
}

TEST_CASE("oracle")
{
    auto r = run("oracle " + model("smooth2.json") + " --weight 1,1 --radii 100 --format csv");
    CHECK(r.out == "r,colength,vol_estimate\n100,5050,1.01\n");
    r = run("oracle " + model("a2_1.json") + " --weight 1,1,1 --radii 10 --format csv");
    CHECK(r.out == "r,colength,vol_estimate\n10,100,2\n");
    auto q = run("oracle " + model("quadrant.json") + " --weight 1,1 --radii 100 --format csv");
    CHECK(q.out == "r,colength,vol_estimate\n100,5050,1.01\n");
    auto j = Json::parse(run("oracle " + model("smooth3.json") + " --weight 1,2,3 --format json").out);
    CHECK(j["rows"].size() == 8);
    CHECK(j["volume"] == "1/6");
    CHECK(j["relative_error"].get<double>() < 0.02);
}

TEST_CASE("verify")
{
    auto r = run("verify --suite thm13 --samples 200 --seed 5");
    CHECK(r.code == 0);
    auto j = Json::parse(r.out);
    CHECK(j["passed"] == true);
    CHECK(j["verdicts"].size() == 4);
    CHECK(run("verify --suite all --samples 100").code == 0);
    CHECK(run("verify --suite skew2 --samples 100 --format csv").out.rfind("name,config", 0) == 0);
    CHECK(run("verify --suite nope").code == 3);
}

TEST_CASE("fujita")
{
    auto j = Json::parse(run("fujita " + model("cone_p1.json")).out);
    CHECK(j["eta"] == "0");
    CHECK(j["f0"] == "4");
    CHECK(j["f1_float"].get<double>() == 4.5);
    CHECK(j["convex"] == true);
    CHECK(Json::parse(run("fujita " + model("cone_p3.json")).out)["f0"] == "256");
    j = Json::parse(run("fujita " + model("cone_negative.json") + " --grid 21").out);
    CHECK(j["phi_prime_zero"] == "-27");
    CHECK_FALSE(j["phi_decrease_beta"].is_null());
}
