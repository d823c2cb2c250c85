#include "doctest.h"

#include "hvol/families.hpp"
#include "hvol/optimizer.hpp"
#include "test_support.hpp"

#include <chrono>
#include <cmath>

using namespace hvol;
using namespace hvol::testing;

namespace {

void check_exact(const MinimizationResult& r, const char* weight, const char* value)
{
    REQUIRE(r.exact_weight.has_value());
    REQUIRE(r.exact_value.has_value());
    CHECK(to_string(*r.exact_weight) == weight);
    CHECK(to_string(*r.exact_value) == value);
    CHECK(r.status == MinimizeStatus::Converged);
}

}  // namespace

TEST_CASE("symmetrize groups variables whose swap preserves the support")
{
    auto classes = symmetrize(a_singularity(3, 4));
    REQUIRE(classes.size() == 2);
    CHECK(classes[0] == std::vector<std::size_t>{0, 1, 2});
    CHECK(classes[1] == std::vector<std::size_t>{3});

    // A_1: every variable appears squared.
    CHECK(symmetrize(a_singularity(2, 2)).size() == 1);

    auto d = symmetrize(d_singularity(2, 4));
    REQUIRE(d.size() == 3);
    CHECK(d[0] == std::vector<std::size_t>{0, 1});

    auto mixed = Hypersurface::make({E({2, 0, 0}), E({0, 3, 0}), E({0, 0, 3})});
    CHECK(symmetrize(mixed).size() == 2);
}

TEST_CASE("evaluate_branch")
{
    auto a2 = a_singularity(2, 3);
    CHECK(evaluate_branch(a2, W("1,1,2/3"), E({2, 0, 0})) == Q("4/3"));
    CHECK(evaluate_branch(a2, W("1,1,2/3"), E({0, 0, 3})) == Q("4/3"));
    // Off the minimizing monomial the branch differs from hvol.
    CHECK(evaluate_branch(a2, W("1,1,1"), E({0, 0, 3})) == Q("0"));

    for (int n = 2; n <= 6; ++n) {
        auto a1 = a_singularity(n, 2);
        std::vector<Rational> ones(static_cast<std::size_t>(n + 1), Rational(1));
        std::vector<int> sq(static_cast<std::size_t>(n + 1), 0);
        sq[0] = 2;
        Rational expected = 2 * ipow(Rational(n - 1), static_cast<unsigned>(n));
        CHECK(evaluate_branch(a1, WeightVector(ones), ExponentVector{sq}) == expected);
    }
    CHECK(std::abs(evaluate_branch(a2, RealWeight({1.0, 1.0, 2.0 / 3}), E({2, 0, 0})) - 4.0 / 3) < 1e-14);
    CHECK_THROWS_AS(evaluate_branch(a2, W("1,1"), E({2, 0, 0})), Error);
}

TEST_CASE("smooth points minimize at the diagonal")
{
    for (int n = 2; n <= 6; ++n) {
        auto start = std::chrono::steady_clock::now();
        auto r = minimize_hvol(SmoothPoint::make(n));
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::string ones;
        for (int i = 0; i < n; ++i) ones += i ? ",1" : "1";
        check_exact(r, ones.c_str(), std::to_string(static_cast<long>(std::pow(n, n))).c_str());
        CHECK(seconds < 1.0);
    }
}

TEST_CASE("hypersurface minimizers")
{
    check_exact(minimize_hvol(a_singularity(4, 3)), "1,1,1,1,2/3", "4096/27");
    check_exact(minimize_hvol(a_singularity(2, 5)), "1,1,2/5", "4/5");
    check_exact(minimize_hvol(e_singularity(Family::E7, 2)), "1,1,4/9,2/3", "250/27");
    check_exact(minimize_hvol(d_singularity(1, 3)), "1,2/3,2/3", "1/2");

    auto r = minimize_hvol(a_singularity(4, 3));
    CHECK(r.active_monomials.size() == 5);
    CHECK(r.first_order_residual <= 1e-7);
    CHECK_FALSE(r.symmetry_broken);
}

TEST_CASE("the A_0 plateau resolves to the lexicographically smallest weight")
{
    auto r = minimize_hvol(a_singularity(3, 1));
    check_exact(r, "1/2,1/2,1/2,1", "27");
}

TEST_CASE("irrational minimizers are reported in floating point")
{
    auto r = minimize_hvol(d_singularity(2, 4));
    CHECK_FALSE(r.exact_weight.has_value());
    const double b = std::sqrt(3.0) - 1;
    CHECK(r.weight[2] == doctest::Approx(b).epsilon(1e-9));
    CHECK(r.weight[3] == doctest::Approx(2 - 2 * b).epsilon(1e-9));
    CHECK(r.value == doctest::Approx(std::pow(2 - b, 3) / (b * (1 - b))).epsilon(1e-10));
    CHECK(r.status == MinimizeStatus::Converged);
}

TEST_CASE("results are normalized and deterministic")
{
    MinimizeOptions o;
    o.seed = 7;
    auto a = minimize_hvol(e_singularity(Family::E8, 3), o);
    auto b = minimize_hvol(e_singularity(Family::E8, 3), o);
    CHECK(a.weight.max() == 1.0);
    CHECK(a.weight == b.weight);
    CHECK(a.value == b.value);
    CHECK(a.starts_used == b.starts_used);
    auto other = minimize_hvol(e_singularity(Family::E8, 3), MinimizeOptions{.starts = 8, .seed = 99});
    CHECK(other.value == doctest::Approx(a.value).epsilon(1e-10));
}

TEST_CASE("toric cones")
{
    SingularityModel quadrant = ToricCone::make({{1, 0}, {0, 1}}, {Q("1"), Q("1")});
    check_exact(minimize_hvol(quadrant), "1,1", "4");
    SingularityModel a1 = ToricCone::make({{1, 0}, {1, 2}}, {Q("1"), Q("0")});
    auto r = minimize_hvol(a1);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("models without a klt weight are rejected")
{
    auto cusp = Hypersurface::make({E({3, 1}), E({1, 3})});
    try {
        minimize_hvol(cusp);
        FAIL("expected NonKltModel");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonKltModel);
    }
}
