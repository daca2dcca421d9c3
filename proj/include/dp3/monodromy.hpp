#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "dp3/core.hpp"
#include "dp3/mat2.hpp"

namespace dp3 {

// A point (a, s00, s0inf, s1inf, g11, g12, g21, g22) of the monodromy manifold.
struct MonodromyPoint {
    cplx a, s00, s0inf, s1inf, g11, g12, g21, g22;

    Mat2 G() const { return {g11, g12, g21, g22}; }
    void set_G(const Mat2& m) { g11 = m.m11; g12 = m.m12; g21 = m.m21; g22 = m.m22; }
    friend bool operator==(const MonodromyPoint&, const MonodromyPoint&) = default;
};

// |relation| for the five defining equations, the last being det G - 1.
std::array<double, 5> manifold_residual(const MonodromyPoint& pt);
double max_manifold_residual(const MonodromyPoint& pt);

struct Branch1 { cplx g11, g12, g21, g22; };  // g11 g22 != 0, det = 1
struct Branch2 { cplx s00, g22; };            // g11 = 0
struct Branch3 { cplx s00, g11; };            // g22 = 0

MonodromyPoint from_branch(cplx a, const Branch1& p);
MonodromyPoint from_branch(cplx a, const Branch2& p);
MonodromyPoint from_branch(cplx a, const Branch3& p);
// Branch 1 takes (g11, g12, g21, g22); branches 2 and 3 take (s00, g22) and (s00, g11).
MonodromyPoint from_branch(int branch, cplx a, std::span<const cplx> free);

// cos(2 pi rho) = -i s00 / 2, principal arccos, Re rho in [0, 1/2], Im rho >= 0 when Re rho = 0.
cplx rho_from(const MonodromyPoint& pt);
cplx rho_from_s00(cplx s00);
// Both sides of the cos(2 pi rho) display: (-i s00/2, cosh(pi a) + s0inf s1inf e^{pi a}/2).
std::pair<cplx, cplx> cos2pirho_pair(const MonodromyPoint& pt);

Mat2 stokes_inf(const MonodromyPoint& pt, int k);
Mat2 stokes_zero(const MonodromyPoint& pt, int k);

struct StokesSet {
    int k_min = 0, k_max = 3;
    std::vector<Mat2> S0, Sinf;  // index k - k_min
    Mat2 Minf, M0;

    const Mat2& zero(int k) const { return S0.at(std::size_t(k - k_min)); }
    const Mat2& inf(int k) const { return Sinf.at(std::size_t(k - k_min)); }
};

StokesSet stokes_structure(const MonodromyPoint& pt, int k_min = 0, int k_max = 3);

struct CyclicResiduals {
    double cyclic;       // |G Minf - M0 G|
    double semi_cyclic;  // |G^{-1} S0_0 sigma1 G - Sinf_0 Sinf_1 sigma3 e^{-pi(a-i/2) sigma3}|
};
CyclicResiduals cyclic_residuals(const MonodromyPoint& pt);

MonodromyPoint apply_F(const MonodromyPoint& pt, int eps1, int eps2);
MonodromyPoint apply_Fhat(const MonodromyPoint& pt, int eps1, int eps2);

enum class Direction { up, down };
MonodromyPoint backlund_monodromy(const MonodromyPoint& pt, Direction dir);

enum class LieKind { negate_tau, negate_a, rotate_tau };
MonodromyPoint lie_point_monodromy(const MonodromyPoint& pt, LieKind kind, int p, int l);

}  // namespace dp3
