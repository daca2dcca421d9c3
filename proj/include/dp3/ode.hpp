#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dp3/core.hpp"
#include "dp3/params.hpp"

namespace dp3 {

struct SolutionState {
    cplx tau, u, du;
    std::optional<cplx> phi;
};

struct Trajectory {
    EquationParams params;
    cplx a;
    std::vector<SolutionState> samples;
    std::vector<cplx> H;
};

struct HamiltonianSplit {
    cplx H, H0, Hinf;
};

// Isomonodromic (A, B, C, D) variables; root carries sqrt(-AB) = u/(eps tau), the branch fixed by u.
struct ABCD {
    cplx A, B, C, D, root;
};

// (u', u'') for the equation; phi is not touched.
std::pair<cplx, cplx> dp3_rhs(const SolutionState& s, cplx a, const EquationParams& p);
cplx phi_rhs(const SolutionState& s, cplx a, const EquationParams& p);

struct IntegrateOptions {
    double tol = 1e-10;
    std::vector<double> dense;  // |tau| values for dense output; empty records accepted steps
    long max_steps = 2'000'000;
};

// Dormand-Prince 5(4) in s = |tau| along the ray of initial.tau, up to |tau| = tau_end.
Trajectory integrate_ray(const SolutionState& initial, cplx a, const EquationParams& p, double tau_end,
                         const IntegrateOptions& opt);
Trajectory integrate_ray(const SolutionState& initial, cplx a, const EquationParams& p, double tau_end,
                         double tol);

cplx hamiltonian_u(const SolutionState& s, cplx a, const EquationParams& p);
cplx hamiltonian_pq(cplx pv, cplx q, cplx tau, cplx a, const EquationParams& p, int eps1_h);
// d/dtau of the explicit tau dependence of hamiltonian_pq.
cplx hamiltonian_pq_dtau(cplx pv, cplx q, cplx tau, cplx a, int eps1_h);
cplx p_from_u(const SolutionState& s, cplx a, const EquationParams& p, int eps1_h);

struct SigmaF {
    cplx sigma, f;
};
SigmaF sigma_and_f(const SolutionState& s, cplx a, const EquationParams& p);
// Residuals of the sigma- and f-equations given values and first two derivatives.
cplx sigma_ode_residual(cplx tau, cplx s, cplx ds, cplx dds, cplx a, const EquationParams& p);
cplx f_ode_residual(cplx tau, cplx f, cplx df, cplx ddf, cplx a, const EquationParams& p);

ABCD to_abcd(const SolutionState& s, cplx a, const EquationParams& p);
HamiltonianSplit hamiltonian_abcd(const ABCD& v, cplx tau, cplx a, const EquationParams& p);
// |H0 - Hinf + (a - i/2)^2 / (2 tau)|.
double split_residual(const HamiltonianSplit& h, cplx tau, cplx a);

// Max over interior samples of |u''_fd - rhs|; samples equally spaced in the ray parameter.
double residual_on_grid(std::span<const cplx> tau, std::span<const cplx> u, cplx a, const EquationParams& p);

// (dp, dq) = (-dH/dq, dH/dp).
std::pair<cplx, cplx> hamiltonian_system_rhs(cplx pv, cplx q, cplx tau, cplx a, const EquationParams& p, int eps1_h);

// b^{2/3} tau^{1/3} / (2 eps) with real cube roots, for a = 0 on the positive axis.
SolutionState algebraic_solution(double tau, const EquationParams& p);

}  // namespace dp3
