#include "hvol/weight.hpp"

#include <sstream>

namespace hvol {

RealWeight to_real(const WeightVector& w)
{
    std::vector<double> out;
    out.reserve(w.size());
    for (const Rational& c : w) out.push_back(c.get_d());
    return RealWeight(std::move(out));
}

WeightVector to_exact(const RealWeight& w)
{
    std::vector<Rational> out;
    out.reserve(w.size());
    for (double c : w) out.emplace_back(c);
    return WeightVector(std::move(out));
}

WeightVector parse_weight(std::string_view text)
{
    std::vector<Rational> coords;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        coords.push_back(parse_rational(piece));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return WeightVector(std::move(coords));
}

std::string to_string(const WeightVector& w)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << to_string(w[i]);
    return os.str();
}

}  // namespace hvol
