#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "dp3/core.hpp"
#include "dp3/jet.hpp"
#include "dp3/monodromy.hpp"
#include "dp3/ode.hpp"
#include "dp3/params.hpp"

namespace dp3 {

// State after one step and the new parameter a -/+ i. phi is not carried.
std::pair<SolutionState, cplx> backlund_step(const SolutionState& s, cplx a, const EquationParams& p, Direction dir);
// The same map on Taylor jets; the result has one order less.
Jet backlund_step_jet(const Jet& u, cplx a, const EquationParams& p, Direction dir);

struct LadderEntry {
    int n;
    cplx a_n;
    SolutionState state;
    cplx v;     // u_n / tau
    cplx g, f;  // v_{n+1} v_n and (2 tau^2 / (i eps b)) g_n
};

// Taylor jet of the solution through a state, generated from the equation.
Jet solution_jet(const SolutionState& s, cplx a, const EquationParams& p, std::size_t order);
// Exact jet of b^{2/3} tau^{1/3} / (2 eps) about tau (a = 0).
Jet algebraic_jet(cplx tau, const EquationParams& p, std::size_t order);
bool is_algebraic_seed(const SolutionState& s, cplx a0, const EquationParams& p);

// Entries n = 0..n_max for a_n = a0 - i n (up) or a0 + i n (down).
std::vector<LadderEntry> ladder(const SolutionState& seed, cplx a0, const EquationParams& p, int n_max,
                                Direction dir = Direction::up);
// |u_n'' - rhs| per entry, u_n'' taken from the propagated Taylor jet.
std::vector<double> ladder_equation_residuals(const SolutionState& seed, cplx a0, const EquationParams& p, int n_max,
                                              Direction dir = Direction::up);

enum class Lattice { km, km_literal, dp, toda, toda_derived, f_rec };
Lattice lattice_from_string(const std::string& s);
const char* to_string(Lattice l);

struct LatticeResidual {
    int n;
    double residual;
};

// Maps |tau| on the seed ray to a seed state there; used for finite differences.
using SeedFn = std::function<SolutionState(cplx tau)>;

std::vector<LatticeResidual> lattice_residuals(const std::vector<LadderEntry>& lad, Lattice which, cplx a0,
                                               const EquationParams& p, const SeedFn& seed = {});

enum class Relabel { flip_eps, flip_b };

struct LieImage {
    SolutionState state;
    cplx a;
    EquationParams params;
};
LieImage lie_point_solution(const SolutionState& s, cplx a, const EquationParams& p, LieKind kind, int pp, int l,
                            Relabel relabel = Relabel::flip_eps);

}  // namespace dp3
