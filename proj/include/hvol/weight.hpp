#pragma once

#include "hvol/error.hpp"
#include "hvol/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace hvol {

/// A point of the open positive cone; defines the monomial valuation v_x.
/// T is Rational on the exact path and double on the optimizer path.
template <class T>
class BasicWeight {
public:
    BasicWeight() = default;

    explicit BasicWeight(std::vector<T> coords) : coords_(std::move(coords))
    {
        if (coords_.empty()) fail(ErrorKind::Domain, "weight vector is empty");
        for (const T& c : coords_)
            if (!(c > 0)) fail(ErrorKind::Domain, "weight coordinates must be strictly positive");
    }

    std::size_t size() const noexcept { return coords_.size(); }
    const T& operator[](std::size_t i) const { return coords_[i]; }
    std::span<const T> coords() const noexcept { return coords_; }
    auto begin() const noexcept { return coords_.begin(); }
    auto end() const noexcept { return coords_.end(); }

    T sum() const
    {
        T s = 0;
        for (const T& c : coords_) s += c;
        return s;
    }
    T product() const
    {
        T p = 1;
        for (const T& c : coords_) p *= c;
        return p;
    }
    T min() const { return *std::min_element(coords_.begin(), coords_.end()); }
    T max() const { return *std::max_element(coords_.begin(), coords_.end()); }

    BasicWeight scaled(const T& lambda) const
    {
        std::vector<T> out;
        out.reserve(coords_.size());
        for (const T& c : coords_) out.push_back(T(c * lambda));
        return BasicWeight(std::move(out));
    }

    /// Rescaled so that the largest coordinate is 1.
    BasicWeight normalized() const
    {
        T m = max();
        std::vector<T> out;
        out.reserve(coords_.size());
        for (const T& c : coords_) out.push_back(T(c / m));
        return BasicWeight(std::move(out));
    }

    friend bool operator==(const BasicWeight& a, const BasicWeight& b) { return a.coords_ == b.coords_; }

private:
    std::vector<T> coords_;
};

using WeightVector = BasicWeight<Rational>;
using RealWeight = BasicWeight<double>;

RealWeight to_real(const WeightVector& w);

/// Exact conversion of each double (doubles are dyadic rationals).
WeightVector to_exact(const RealWeight& w);

/// Parses "1,1,2/3".
WeightVector parse_weight(std::string_view text);
std::string to_string(const WeightVector& w);

}  // namespace hvol
