#include "doctest.h"

#include "hvol/families.hpp"
#include "hvol/valuation.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <cmath>

using namespace hvol;
using namespace hvol::testing;

namespace {

SingularityModel smooth(int n) { return SmoothPoint::make(n); }

SingularityModel quadrant() { return ToricCone::make({{1, 0}, {0, 1}}, {Q("1"), Q("1")}); }

// sigma = cone((1,0),(1,2)): the A_1 surface singularity as a toric germ.
SingularityModel toric_a1() { return ToricCone::make({{1, 0}, {1, 2}}, {Q("1"), Q("0")}); }

bool throws_kind(ErrorKind kind, auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.kind() == kind;
    }
    return false;
}

}  // namespace

TEST_CASE("weighted order and its active monomials")
{
    auto a2 = a_singularity(2, 3);
    auto wo = weighted_order(W("1,1,2/3"), a2.support());
    CHECK(wo.value == 2);
    CHECK(wo.active.size() == 3);

    auto d = d_singularity(1, 3);
    // direct dot products: 2*1, 2*(2/3) + 2/3, 3*(2/3)
    auto x = W("1,2/3,2/3");
    CHECK(weighted_order(x, d.support()).value == 2);
    CHECK(weighted_order(x, d.support()).active == std::vector<std::size_t>{0, 1, 2});

    auto cubic = Hypersurface::make({E({3, 0, 0}), E({1, 2, 0}), E({0, 0, 4})});
    CHECK(weighted_order(W("1,1,1"), cubic.support()).value == 3);
    CHECK(weighted_order(W("1,1,1"), cubic.support()).active == std::vector<std::size_t>{0, 1});

    CHECK(throws_kind(ErrorKind::InvalidModel, [] { weighted_order(W("1"), std::span<const ExponentVector>{}); }));
    CHECK(throws_kind(ErrorKind::Domain, [] { W("1,0,1"); }));
    CHECK(throws_kind(ErrorKind::Domain, [] { W("1,-1/2"); }));
}

TEST_CASE("log discrepancy on the three model classes")
{
    CHECK(log_discrepancy(smooth(3), W("1,1,1")) == 3);
    for (int n = 2; n <= 6; ++n) {
        SingularityModel a1 = a_singularity(n, 2);
        std::vector<Rational> ones(n + 1, Rational(1));
        CHECK(log_discrepancy(a1, WeightVector(ones)) == n - 1);
    }
    CHECK(log_discrepancy(quadrant(), W("2,3")) == 5);

    // z1^4 + z2^4 + z3^4 is not klt at (1,1,1): 3 - 4 < 0.
    SingularityModel quartic = Hypersurface::make({E({4, 0, 0}), E({0, 4, 0}), E({0, 0, 4})});
    CHECK(throws_kind(ErrorKind::NonKltWeight, [&] { log_discrepancy(quartic, W("1,1,1")); }));
    CHECK(throws_kind(ErrorKind::Domain, [&] { log_discrepancy(smooth(3), W("1,1")); }));
}

TEST_CASE("volume in closed form")
{
    CHECK(volume(smooth(3), W("1,2,3")) == Q("1/6"));
    for (int n = 2; n <= 5; ++n) {
        SingularityModel a1 = a_singularity(n, 2);
        CHECK(volume(a1, WeightVector(std::vector<Rational>(n + 1, Rational(1)))) == 2);
    }
    SingularityModel e7 = e_singularity(Family::E7, 2);
    // v_x(f) = 2 and prod x = 8/27
    CHECK(volume(e7, W("1,1,4/9,2/3")) == Q("27/4"));

    // The toric A_1 agrees with the hypersurface uv = w^2 at matched weights (x2, 2x1 - x2, x1).
    SingularityModel uvw = Hypersurface::make({E({1, 1, 0}), E({0, 0, 2})});
    auto x = W("3/2,1");
    CHECK(volume(toric_a1(), x) == volume(uvw, W("1,2,3/2")));
    CHECK(log_discrepancy(toric_a1(), x) == log_discrepancy(uvw, W("1,2,3/2")));
    CHECK(throws_kind(ErrorKind::InvalidWeight, [] { volume(toric_a1(), W("1,3")); }));
}

TEST_CASE("normalized volume reports")
{
    auto r = normalized_volume(smooth(3), W("1,1,1"));
    CHECK(r.normalized_volume == 27);
    CHECK(r.ideal_value == 1);
    REQUIRE(r.skewness);
    CHECK(*r.skewness == 1);

    SingularityModel a31 = a_singularity(3, 2);
    CHECK(normalized_volume(a31, W("1,1,1,1")).normalized_volume == 16);
    CHECK_FALSE(normalized_volume(a31, W("1,1,1,1")).skewness.has_value());

    SingularityModel a22 = a_singularity(2, 3);
    CHECK(normalized_volume(a22, W("1,1,2/3")).normalized_volume == Q("4/3"));

    // hvol uses dim X = 2 for a surface in C^3, never the ambient 3.
    auto rep = normalized_volume(a22, W("1,1,2/3"));
    CHECK(rep.normalized_volume == rep.log_discrepancy * rep.log_discrepancy * rep.volume);

    // toric A_1: v(m) is the least value on the semigroup generators (0,1), (1,0), (2,-1).
    auto t = normalized_volume(toric_a1(), W("1,1/2"));
    CHECK(t.ideal_value == Q("1/2"));
    CHECK(normalized_volume(toric_a1(), W("1,1")).normalized_volume == 2);
    CHECK_FALSE(t.skewness.has_value());
}

TEST_CASE("lct of valuation ideals")
{
    CHECK(lct_of_valuation_ideals(smooth(2), W("1,1")) == 2);
    CHECK(lct_of_valuation_ideals(smooth(3), W("1,2,3")) == 6);
    Rational lambda = Q("7/5");
    for (int n = 1; n <= 5; ++n)
        CHECK(lct_of_valuation_ideals(smooth(n), WeightVector(std::vector<Rational>(n, lambda))) == n * lambda);
    SingularityModel a = a_singularity(2, 2);
    CHECK(throws_kind(ErrorKind::UnsupportedModel, [&] { lct_of_valuation_ideals(a, W("1,1,1")); }));
}

TEST_CASE("model invariants")
{
    CHECK(throws_kind(ErrorKind::InvalidModel, [] { ToricCone::make({{1, 0}, {1, 2}}, {Q("1"), Q("1")}); }));
    CHECK(throws_kind(ErrorKind::InvalidModel, [] { ToricCone::make({{2, 0}, {0, 1}}, {Q("1/2"), Q("1")}); }));
    CHECK(throws_kind(ErrorKind::UnsupportedModel,
                      [] { ToricCone::make({{1, 0}, {0, 1}, {1, 1}}, {Q("1"), Q("1")}); }));
    CHECK(throws_kind(ErrorKind::InvalidModel, [] { Hypersurface::make({}); }));
    CHECK(throws_kind(ErrorKind::InvalidModel, [] { Hypersurface::make({E({2, 0}), E({2, 0})}); }));
    CHECK(throws_kind(ErrorKind::InvalidModel, [] { Hypersurface::make({E({2, 0}), E({0, 1})}); }));
    CHECK_NOTHROW(Hypersurface::make({E({2, 0}), E({0, 1})}, {.allow_smooth_germ = true}));
    CHECK(a_singularity(3, 4).multiplicity() == 2);
    CHECK(d_singularity(2, 5).x_dim() == 3);
    CHECK(intrinsic_dim(SingularityModel(e_singularity(Family::E8, 2))) == 3);
}

TEST_CASE("scale invariance on the exact path")
{
    std::mt19937_64 rng(20240611);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + trial % 4;
        Rational lambda = random_rational(rng, 50, 50);
        SingularityModel models[] = {smooth(n), a_singularity(n, 2 + trial % 4)};
        for (const auto& m : models) {
            auto x = random_weight(rng, ambient_dim(m), 5, 5);
            ValuationReport r0, r1;
            try {
                r0 = normalized_volume(m, x);
            } catch (const Error&) {
                continue;
            }
            r1 = normalized_volume(m, x.scaled(lambda));
            CHECK(r1.normalized_volume == r0.normalized_volume);
            CHECK(r1.log_discrepancy == lambda * r0.log_discrepancy);
            CHECK(r1.volume == r0.volume / ipow(lambda, static_cast<unsigned>(intrinsic_dim(m))));
        }
    }
}

TEST_CASE("hypersurface leading-term consistency")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        Family fam = static_cast<Family>(trial % 5);
        auto h = family_member(fam, 1 + trial % 4, 3 + trial % 3);
        auto x = random_weight(rng, h.ambient_dim());
        CHECK(volume(SingularityModel(h), x) * x.product() == weighted_order(x, h.support()).value);
    }
}

TEST_CASE("smooth point bounds: dFEM and the monomial product identity")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        int n = 2 + trial % 5;
        auto x = random_weight(rng, n);
        auto r = normalized_volume(smooth(n), x);
        Rational nn = ipow(Rational(n), static_cast<unsigned>(n));
        CHECK(r.normalized_volume >= nn);
        bool diagonal = std::all_of(x.begin(), x.end(), [&](const Rational& c) { return c == x[0]; });
        CHECK((r.normalized_volume == nn) == diagonal);

        std::vector<Rational> s(x.begin(), x.end());
        std::sort(s.begin(), s.end());
        Rational product(1);
        for (int i = 1; i + 1 < n; ++i) product *= s.back() / s[i];
        Rational lhs = ipow(s.back(), static_cast<unsigned>(n - 1)) * r.volume * s.front();
        CHECK(lhs == product);
        CHECK(lhs >= 1);
        CHECK(*r.skewness >= r.ideal_value);
    }
}

TEST_CASE("float path tracks the exact path")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        SingularityModel m = e_singularity(static_cast<Family>(2 + trial % 3), 1 + trial % 4);
        auto x = random_weight(rng, ambient_dim(m));
        try {
            auto exact = normalized_volume(m, x);
            auto real = normalized_volume(m, to_real(x));
            CHECK(real.normalized_volume == doctest::Approx(exact.normalized_volume.get_d()).epsilon(1e-12));
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::NonKltWeight);
        }
    }
}
