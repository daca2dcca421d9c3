#pragma once

#include <array>
#include <optional>
#include <vector>

#include "dp3/core.hpp"
#include "dp3/monodromy.hpp"
#include "dp3/ode.hpp"
#include "dp3/params.hpp"

namespace dp3 {

enum class SpecialChart { none, g21_zero, g12_zero };

struct LargeTauChart {
    cplx nu_plus_1, omega, z;
    cplx z_unshifted;  // z = z_unshifted + i pi + 2 pi i (nu+1)
    int eps1 = 0;
    EquationParams params;
    SpecialChart special = SpecialChart::none;
    MonodromyPoint mapped;  // F_{eps1,eps2}(pt)
    cplx a;                 // original a
};

struct SmallTauChart {
    cplx rho;
    // p((-1)^{eps2} a, +-rho) and p((-1)^{eps2+1} a, +-rho)
    std::array<cplx, 2> p1, p2;
    std::array<cplx, 2> chi1, chi2;  // at +rho, -rho
    int eps1 = 0;
    EquationParams params;
    bool log_mode = false;
    std::array<cplx, 2> Q{};  // Q((-1)^{eps2} a), Q((-1)^{eps2+1} a)
    cplx a2{}, b2{};
    MonodromyPoint mapped;
    cplx a;
};

// theta = 3 sqrt(3) |eps b|^{1/3} |tau|^{2/3}
double theta(double tau, const EquationParams& p);

LargeTauChart large_tau_chart(const MonodromyPoint& pt, int eps1, const EquationParams& p);
// Builds the chart from data already carried to the ray (no F applied).
// a is the original parameter; the mapped point may carry -a.
LargeTauChart large_tau_chart_mapped(const MonodromyPoint& mapped, cplx a, int eps1, const EquationParams& p);
cplx u_large(const LargeTauChart& c, double tau);
cplx H_large(const LargeTauChart& c, double tau);

// The rho override must be one of the two roots of cos(2 pi rho) = -i s00 / 2.
SmallTauChart small_tau_chart(const MonodromyPoint& pt, int eps1, const EquationParams& p,
                              std::optional<cplx> rho_override = std::nullopt);
SmallTauChart small_tau_chart_mapped(const MonodromyPoint& mapped, cplx a, int eps1, const EquationParams& p,
                                     std::optional<cplx> rho_override = std::nullopt);
cplx u_small(const SmallTauChart& c, double tau);
cplx du_small(const SmallTauChart& c, double tau);  // d/dtau along the ray
cplx H_small(const SmallTauChart& c, double tau);
cplx tau_function_asymptotic(const SmallTauChart& c, double tau, cplx konst);
cplx tau_function_exponent(const SmallTauChart& c);

// p(z1, z2) of the small-tau formula.
cplx frak_p(cplx z1, cplx z2, const EquationParams& p);
cplx chi1(const MonodromyPoint& g, cplx z);
cplx chi2(const MonodromyPoint& g, cplx z);
cplx Q_fn(cplx z, const EquationParams& p);

enum class Regime { large, small };

struct ImagEvaluation {
    cplx value;
    cplx prefactor;  // value = prefactor * kernel
    cplx kernel;     // real-axis formula on hatted data at |tau|
};
ImagEvaluation u_imag_detail(const MonodromyPoint& pt, int eps1, const EquationParams& p, double tau, Regime r);
cplx u_imag(const MonodromyPoint& pt, int eps1, const EquationParams& p, double tau, Regime r);

// The four connection identities between the (0,0) and (+-1,0) large-tau charts.
std::array<double, 4> remark31_identities(cplx a, cplx omega, cplx g1122, cplx omega_p, cplx g1122_p, cplx omega_m,
                                          cplx g1122_m);
std::array<double, 4> remark31_residuals(const MonodromyPoint& pt);

struct FitResult {
    cplx nu_plus_1, z;
    double residual_norm = 0;   // rms of the final residual
    double condition = 0;       // condition number of the linear design at the solution
    double amplitude = 0;       // max |oscillatory part| over the window
    bool special = false;       // oscillation below threshold, no (nu, z) fitted
    int iterations = 0;
};

struct FitOptions {
    double window_lo = 0, window_hi = 0;  // |tau| window; zero means the whole trajectory
    bool nuisance = true;                 // include tau^{-1/3} correction columns
    double special_threshold = 1e-8;
};

FitResult fit_large_tau(const Trajectory& traj, const EquationParams& p, const FitOptions& opt = {});

struct ConvergenceRow {
    double tau0, tau1;
    double err_nu, err_z;
    FitResult fit;
};

struct ConnectionOptions {
    int eps1 = 0;
    double tol = 1e-12;
    std::vector<double> tau0_list;  // extra seeds for the convergence table
    std::vector<double> tau1_list;  // extra end points
    double window_fraction = 0.5;   // fit on [f tau1, tau1]
};

struct ConnectionReport {
    bool special = false;
    cplx predicted_nu, predicted_z;
    FitResult fitted;
    double err_nu = 0, err_z = 0;
    double leading_coefficient_error = 0;  // special charts: |fitted mean of u/tau^{1/3} - eps (eb)^{2/3}/2|
    std::vector<ConvergenceRow> table;
};

ConnectionReport verify_connection(const MonodromyPoint& pt, const EquationParams& p, double tau0, double tau1,
                                   const ConnectionOptions& opt = {});

// z difference reduced modulo 2 pi i after aligning the sqrt(nu+1) branches.
double z_distance(cplx z_fit, cplx nu_fit, cplx z_pred, cplx nu_pred);

}  // namespace dp3
