#include "hvol/families.hpp"

#include "hvol/error.hpp"

namespace hvol {

namespace {

std::vector<ExponentVector> squares(int n, int ambient)
{
    std::vector<ExponentVector> support;
    for (int i = 0; i < n; ++i) {
        ExponentVector e{std::vector<int>(ambient, 0)};
        e.entries[i] = 2;
        support.push_back(e);
    }
    return support;
}

ExponentVector monomial(int ambient, std::initializer_list<std::pair<int, int>> powers)
{
    ExponentVector e{std::vector<int>(ambient, 0)};
    for (auto [var, power] : powers) e.entries[var] = power;
    return e;
}

}  // namespace

Family parse_family(std::string_view name)
{
    if (name == "A") return Family::A;
    if (name == "D") return Family::D;
    if (name == "E6") return Family::E6;
    if (name == "E7") return Family::E7;
    if (name == "E8") return Family::E8;
    fail(ErrorKind::Domain, "unknown family '" + std::string(name) + "' (expected A, D, E6, E7, E8)");
}

const char* family_name(Family f)
{
    switch (f) {
    case Family::A: return "A";
    case Family::D: return "D";
    case Family::E6: return "E6";
    case Family::E7: return "E7";
    case Family::E8: return "E8";
    }
    return "?";
}

Hypersurface a_singularity(int n, int k)
{
    if (n < 1 || k < 1) fail(ErrorKind::Domain, "A family needs n >= 1 and k >= 1");
    auto support = squares(n, n + 1);
    support.push_back(monomial(n + 1, {{n, k}}));
    return Hypersurface::make(std::move(support), {.allow_smooth_germ = k == 1});
}

Hypersurface d_singularity(int n, int k)
{
    if (n < 1 || k < 3) fail(ErrorKind::Domain, "D family needs n >= 1 and k >= 3");
    auto support = squares(n, n + 2);
    support.push_back(monomial(n + 2, {{n, 2}, {n + 1, 1}}));
    support.push_back(monomial(n + 2, {{n + 1, k}}));
    return Hypersurface::make(std::move(support));
}

Hypersurface e_singularity(Family f, int n)
{
    if (n < 1) fail(ErrorKind::Domain, "E families need n >= 1");
    auto support = squares(n, n + 2);
    switch (f) {
    case Family::E6:
        support.push_back(monomial(n + 2, {{n, 3}}));
        support.push_back(monomial(n + 2, {{n + 1, 4}}));
        break;
    case Family::E7:
        support.push_back(monomial(n + 2, {{n, 3}, {n + 1, 1}}));
        support.push_back(monomial(n + 2, {{n + 1, 3}}));
        break;
    case Family::E8:
        support.push_back(monomial(n + 2, {{n, 3}}));
        support.push_back(monomial(n + 2, {{n + 1, 5}}));
        break;
    default: fail(ErrorKind::Domain, "not an E family");
    }
    return Hypersurface::make(std::move(support));
}

Hypersurface family_member(Family f, int n, int k)
{
    switch (f) {
    case Family::A: return a_singularity(n, k);
    case Family::D: return d_singularity(n, k);
    default: return e_singularity(f, n);
    }
}

}  // namespace hvol
