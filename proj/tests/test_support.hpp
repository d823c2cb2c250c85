#pragma once

#include "hvol/model.hpp"
#include "hvol/weight.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace hvol::testing {

inline Rational Q(const char* text) { return parse_rational(text); }
inline WeightVector W(const char* text) { return parse_weight(text); }

inline ExponentVector E(std::initializer_list<int> entries) { return ExponentVector{std::vector<int>(entries)}; }

/// Random rational p/q with 1 <= p <= max_num, 1 <= q <= max_den.
inline Rational random_rational(std::mt19937_64& rng, int max_num, int max_den)
{
    std::uniform_int_distribution<int> num(1, max_num), den(1, max_den);
    Rational r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

inline WeightVector random_weight(std::mt19937_64& rng, int n, int max_num = 9, int max_den = 9)
{
    std::vector<Rational> c;
    for (int i = 0; i < n; ++i) c.push_back(random_rational(rng, max_num, max_den));
    return WeightVector(std::move(c));
}

}  // namespace hvol::testing
