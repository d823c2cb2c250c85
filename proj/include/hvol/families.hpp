#pragma once

#include "hvol/model.hpp"

#include <string>
#include <string_view>

namespace hvol {

enum class Family { A, D, E6, E7, E8 };

Family parse_family(std::string_view name);
const char* family_name(Family f);

/// A^n_{k-1}: z_1^2 + ... + z_n^2 + z_{n+1}^k in C^{n+1}, dim n. k = 1 gives a smooth germ.
Hypersurface a_singularity(int n, int k);

/// D^{n+1}_{k+1}: z_1^2 + ... + z_n^2 + z_{n+1}^2 z_{n+2} + z_{n+2}^k in C^{n+2}, dim n + 1.
Hypersurface d_singularity(int n, int k);

/// E^{n+1}_6: ... + z_{n+1}^3 + z_{n+2}^4
/// E^{n+1}_7: ... + z_{n+1}^3 z_{n+2} + z_{n+2}^3
/// E^{n+1}_8: ... + z_{n+1}^3 + z_{n+2}^5
/// n counts the quadratic variables; the germ has dim n + 1.
Hypersurface e_singularity(Family f, int n);

/// Family member indexed by (n, k); k is ignored for the E families.
Hypersurface family_member(Family f, int n, int k);

}  // namespace hvol
