#include "doctest.h"

#include "hvol/families.hpp"
#include "hvol/lattice.hpp"
#include "hvol/valuation.hpp"
#include "test_support.hpp"

#include <cmath>
#include <functional>

using namespace hvol;
using namespace hvol::testing;

namespace {

// Independent oracle: plain nested loops with exact rational comparison.
std::uint64_t brute_smooth(const WeightVector& x, const Rational& r)
{
    const std::size_t n = x.size();
    std::uint64_t count = 0;
    std::vector<int> e(n, 0);
    std::function<void(std::size_t, Rational)> rec = [&](std::size_t i, Rational used) {
        if (i == n) {
            ++count;
            return;
        }
        for (int a = 0;; ++a) {
            Rational u = used + Rational(a) * x[i];
            if (u >= r) break;
            rec(i + 1, u);
        }
    };
    rec(0, Rational(0));
    return count;
}

std::uint64_t brute_toric(const ToricCone& cone, const WeightVector& x, const Rational& r, int box)
{
    std::uint64_t count = 0;
    const int n = cone.rank();
    std::vector<long> y(n, -box);
    for (;;) {
        bool ok = true;
        for (const auto& v : cone.generators()) {
            long s = 0;
            for (int k = 0; k < n; ++k) s += v[k] * y[k];
            ok = ok && s >= 0;
        }
        Rational p(0);
        for (int k = 0; k < n; ++k) p += Rational(y[k]) * x[k];
        if (ok && p < r) ++count;
        int k = 0;
        while (k < n && y[k] == box) y[k] = -box, ++k;
        if (k == n) break;
        ++y[k];
    }
    return count;
}

}  // namespace

TEST_CASE("smooth colength spot values")
{
    CHECK(colength_smooth(2, W("1,1"), Q("100")) == 5050);
    CHECK(colength_smooth(1, W("1"), Q("5")) == 5);
    CHECK(colength_smooth(2, W("1,2"), Q("4")) == 6);
    CHECK(colength_smooth(3, W("1,1,1"), Q("10")) == 220);
    CHECK(colength_smooth(2, W("1,1"), Q("0")) == 0);
}

TEST_CASE("smooth colength agrees with brute force")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 1 + trial % 4;
        auto x = random_weight(rng, n, 7, 5);
        Rational r = random_rational(rng, 40, 3);
        CHECK(colength_smooth(n, x, r) == brute_smooth(x, r));
    }
}

TEST_CASE("hypersurface inclusion-exclusion count")
{
    auto a21 = a_singularity(2, 2);
    CHECK(colength_hypersurface(a21, W("1,1,1"), Q("10")) == 100);
    CHECK(colength_hypersurface(a21, W("1,1,1"), Q("2")) == colength_smooth(3, W("1,1,1"), Q("2")));
    CHECK(colength_hypersurface(a21, W("1,1,1"), Q("3/2")) == colength_smooth(3, W("1,1,1"), Q("3/2")));

    SingularityModel m = a21;
    for (int r = 2; r <= 40; r += 2) {
        Rational rr(r);
        auto s = estimate_volume(m, W("1,1,1"), std::vector<Rational>{rr});
        CHECK(s.last_estimate() == 2.0);
    }
}

TEST_CASE("toric colength")
{
    auto quad = ToricCone::make({{1, 0}, {0, 1}}, {Q("1"), Q("1")});
    CHECK(colength_toric(quad, W("1,1"), Q("100")) == 5050);
    auto line = ToricCone::make({{1}}, {Q("1")});
    CHECK(colength_toric(line, W("1"), Q("5")) == 5);

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        auto x = random_weight(rng, 2 + trial % 2, 6, 4);
        Rational r = random_rational(rng, 30, 2);
        std::vector<ToricCone::IntVector> gens;
        std::vector<Rational> gamma;
        for (std::size_t i = 0; i < x.size(); ++i) {
            ToricCone::IntVector g(x.size(), 0);
            g[i] = 1;
            gens.push_back(g);
            gamma.push_back(Rational(1));
        }
        auto orth = ToricCone::make(gens, gamma);
        CHECK(colength_toric(orth, x, r) == colength_smooth(static_cast<int>(x.size()), x, r));
    }

    auto a1 = ToricCone::make({{1, 0}, {1, 2}}, {Q("1"), Q("0")});
    for (int trial = 0; trial < 20; ++trial) {
        auto x = W("3/2,1");
        Rational r = random_rational(rng, 25, 2);
        CHECK(colength_toric(a1, x, r) == brute_toric(a1, x, r, 60));
    }
    auto cone3 = ToricCone::make({{1, 0, 0}, {0, 1, 0}, {1, 1, 2}}, {Q("1"), Q("1"), Q("-1/2")});
    for (int trial = 0; trial < 10; ++trial) {
        auto x = W("2,3/2,1");
        Rational r = random_rational(rng, 12, 2);
        CHECK(colength_toric(cone3, x, r) == brute_toric(cone3, x, r, 30));
    }
    CHECK_THROWS_AS(colength_toric(a1, W("1,3"), Q("10")), Error);
}

TEST_CASE("toric A_1 against the hypersurface uv = w^2 at matched weights")
{
    SingularityModel toric = ToricCone::make({{1, 0}, {1, 2}}, {Q("1"), Q("0")});
    SingularityModel hyper = Hypersurface::make({E({1, 1, 0}), E({0, 0, 2})});
    auto xt = W("3/2,1");
    auto xh = W("1,2,3/2");  // (x2, 2 x1 - x2, x1)
    double closed = volume(toric, xt).get_d();
    CHECK(volume(hyper, xh).get_d() == closed);
    auto st = estimate_volume(toric, xt, default_radii(xt));
    auto sh = estimate_volume(hyper, xh, default_radii(xh));
    CHECK(std::abs(st.last_estimate() - closed) / closed < 0.02);
    CHECK(std::abs(sh.last_estimate() - closed) / closed < 0.02);
    CHECK(std::abs(st.last_estimate() - sh.last_estimate()) / closed < 0.02);
}

TEST_CASE("estimate_volume series")
{
    SingularityModel m = SmoothPoint::make(2);
    auto s = estimate_volume(m, W("1,1"), std::vector<Rational>{Q("100")});
    CHECK(s.colengths[0] == 5050);
    CHECK(s.last_estimate() == doctest::Approx(1.01).epsilon(1e-15));

    auto big = estimate_volume(m, W("1,1"), std::vector<Rational>{Q("1000"), Q("10000"), Q("100000")});
    CHECK(std::abs(big.last_estimate() - 1.0) < 1e-4);

    CHECK_THROWS_AS(estimate_volume(m, W("1,1"), std::vector<Rational>{Q("10"), Q("5")}), Error);
    auto radii = default_radii(W("1,2"));
    REQUIRE(radii.size() == 8);
    CHECK(radii.front() == 32);
    CHECK(radii.back() == 1024);
}

TEST_CASE("colength properties: monotone, rescaling, capacity")
{
    std::mt19937_64 rng(23);
    SingularityModel models[] = {SmoothPoint::make(3), a_singularity(2, 3), d_singularity(1, 4)};
    for (const auto& m : models) {
        for (int trial = 0; trial < 10; ++trial) {
            auto x = random_weight(rng, ambient_dim(m), 5, 4);
            std::uint64_t prev = 0;
            for (int r = 1; r <= 30; ++r) {
                std::uint64_t c = colength(m, x, Rational(r));
                if (std::holds_alternative<SmoothPoint>(m)) CHECK(c >= prev);
                prev = c;
            }
            Rational lambda = random_rational(rng, 9, 9);
            Rational r = random_rational(rng, 40, 3);
            CHECK(colength(m, x.scaled(lambda), r * lambda) == colength(m, x, r));
        }
    }
    CHECK_THROWS_AS(colength_smooth(3, W("1,1,1"), Q("100000000")), Error);
    try {
        colength_smooth(3, W("1,1,1"), Q("100000000"));
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Capacity);
    }
}
