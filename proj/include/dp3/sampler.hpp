#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dp3/monodromy.hpp"

namespace dp3 {

struct SampleConstraints {
    double a_max = 1.0;     // |a| <= a_max
    double im_a_max = 1.0;  // |Im a| < im_a_max
    double re_a_max = 1.0;  // |Re a| <= re_a_max
    double entry_max = 5.0;   // every Stokes multiplier and g_ij bounded in modulus
    std::optional<double> re_nu_max;   // |Re(nu+1)| < bound, nu+1 = (i/2pi) ln(g11 g22)
    std::optional<double> abs_nu_max;  // |nu+1| <= bound; switches branch 1 to drawing (nu+1, rho) directly
    std::optional<double> re_rho_max;  // |Re rho| < bound and rho != 0
    long max_attempts = 100000;
};

// Deterministic per seed. Branch 1 draws (g11, g12, g21) and solves det G = 1 for g22;
// branches 2 and 3 draw (s00, g22) and (s00, g11). Throws validation on rejection exhaustion.
std::vector<MonodromyPoint> sample_manifold(std::uint64_t seed, int count, int branch,
                                            const SampleConstraints& c = {});

// (i / 2 pi) ln(g11 g22), principal log.
cplx nu_plus_1_of(const MonodromyPoint& pt);

}  // namespace dp3
