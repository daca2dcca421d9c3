#include "dp3/asymptotics.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "dp3/specfun.hpp"

namespace dp3 {
namespace {

constexpr double kZeroTol = 1e-12;
const double kSqrt3 = std::sqrt(3.0);

int ray_sign(int eps1) { return eps1 == 0 ? 1 : -1; }  // (-1)^{eps1}

void require_eps1(int e, bool allow_zero) {
    if (e == 1 || e == -1 || (allow_zero && e == 0)) return;
    fail(ErrorKind::validation, allow_zero ? "eps1 must be 0 or +-1" : "eps1 must be +-1");
}

double g_scale(const MonodromyPoint& m) {
    return std::max({1.0, std::abs(m.g11), std::abs(m.g12), std::abs(m.g21), std::abs(m.g22)});
}

void require_tau(double tau) {
    if (!(tau > 0.0) || !std::isfinite(tau)) fail(ErrorKind::validation, "tau must be a positive magnitude");
}

// |tau|^{2r}
cplx mag_pow(double tau, cplx r) { return std::exp(2.0 * r * std::log(tau)); }

cplx signed_a(const EquationParams& p, cplx a) { return double(p.sign2()) * a; }

}  // namespace

double theta(double tau, const EquationParams& p) {
    return 3.0 * kSqrt3 * std::cbrt(std::abs(p.eb())) * std::pow(tau, 2.0 / 3.0);
}

LargeTauChart large_tau_chart(const MonodromyPoint& pt, int eps1, const EquationParams& p) {
    validate(p);
    require_eps1(eps1, true);
    return large_tau_chart_mapped(apply_F(pt, eps1, p.eps2), pt.a, eps1, p);
}

LargeTauChart large_tau_chart_mapped(const MonodromyPoint& m, cplx a, int eps1, const EquationParams& p) {
    validate(p);
    LargeTauChart c;
    c.eps1 = eps1;
    c.params = p;
    c.mapped = m;
    c.a = a;
    const double sc = g_scale(m);
    const cplx prod = m.g11 * m.g22;
    const bool unit = std::abs(prod - 1.0) < kZeroTol * sc * sc;
    const bool z21 = std::abs(m.g21) < kZeroTol * sc, z12 = std::abs(m.g12) < kZeroTol * sc;
    if (unit && (z21 || z12)) {
        c.special = z21 ? SpecialChart::g21_zero : SpecialChart::g12_zero;
        c.nu_plus_1 = 0.0;
        c.omega = m.g22 != cplx{0.0} ? m.g12 / m.g22 : cplx{0.0};
        c.z = c.z_unshifted = 0.0;
        return c;
    }
    const double tiny = kZeroTol * sc;
    if (std::abs(m.g11) < tiny || std::abs(m.g12) < tiny || std::abs(m.g21) < tiny || std::abs(m.g22) < tiny)
        fail(ErrorKind::condition, "large-tau chart needs g11 g12 g21 g22 != 0 or a special configuration");
    c.nu_plus_1 = I / (2.0 * pi) * std::log(prod);
    if (!(std::abs(c.nu_plus_1.real()) < 1.0 / 6.0)) {
        std::ostringstream os;
        os << "|Re(nu+1)| = " << std::abs(c.nu_plus_1.real()) << " is not below 1/6";
        fail(ErrorKind::condition, os.str());
    }
    c.omega = m.g12 / m.g22;
    const cplx nu = c.nu_plus_1;
    if (nu == cplx{0.0}) {
        c.z = c.z_unshifted = 0.0;
        return c;
    }
    c.z_unshifted = 0.5 * std::log(2.0 * pi) - pi * I / 2.0 - 1.5 * pi * I * nu +
                  double(p.sign2()) * I * a * std::log(2.0 + kSqrt3) + nu * std::log(12.0) -
                  (std::log(c.omega) + std::log(std::sqrt(nu)) + ln_gamma(nu));
    // The shift by i pi + 2 pi i (nu+1) makes the phase agree with the g21 = 0 and g12 = 0
    // charts as nu+1 -> 0 and with integrated solutions.
    c.z = c.z_unshifted + pi * I + 2.0 * pi * I * nu;
    return c;
}

cplx u_large(const LargeTauChart& c, double tau) {
    require_tau(tau);
    const EquationParams& p = c.params;
    const double s1 = ray_sign(c.eps1), ep = p.eps, aeb = std::abs(p.eb());
    const double th = theta(tau, p);
    if (c.special == SpecialChart::none) {
        if (c.nu_plus_1 == cplx{0.0})
            fail(ErrorKind::condition, "degenerate chart: nu+1 = 0 needs a special chart");
        const cplx nu = c.nu_plus_1;
        const cplx osc = std::sqrt(nu) * std::exp(0.75 * pi * I) * std::cosh(I * th + nu * std::log(th) + c.z);
        return s1 * ep * std::sqrt(aeb) / std::pow(3.0, 0.25) * (std::sqrt(th / 12.0) + osc);
    }
    const cplx as = signed_a(p, c.a);
    const double lead = ep * std::pow(aeb, 2.0 / 3.0) / 2.0 * s1 * std::cbrt(tau);
    const cplx coef = s1 * ep * std::sqrt(aeb) * (c.mapped.s00 - I * std::exp(-pi * as)) /
                      (std::pow(2.0, 1.5) * std::pow(3.0, 0.25) * std::sqrt(pi));
    const double ratio = (kSqrt3 - 1.0) / (kSqrt3 + 1.0);
    if (c.special == SpecialChart::g21_zero)
        return lead + coef * std::exp(I * as * std::log(ratio)) * std::exp(-I * (th - pi / 4.0));
    return lead + coef * std::exp(-I * as * std::log(ratio)) * std::exp(I * (th + 0.75 * pi));
}

cplx H_large(const LargeTauChart& c, double tau) {
    require_tau(tau);
    const EquationParams& p = c.params;
    const double s1 = ray_sign(c.eps1), aeb = std::abs(p.eb());
    const cplx am = c.a - double(p.sign2()) * I / 2.0;
    const double t13 = s1 * std::cbrt(tau);
    return 3.0 * std::pow(aeb, 2.0 / 3.0) * t13 +
           2.0 * std::cbrt(aeb) / t13 * (am - 2.0 * kSqrt3 * I * c.nu_plus_1) + am * am / (2.0 * s1 * tau);
}

cplx frak_p(cplx z1, cplx z2, const EquationParams& p) {
    const cplx base = std::abs(p.eb()) / 32.0 * I;
    const cplx lg = z2 * std::log(base) + 2.0 * (ln_gamma(0.5 - z2) - ln_gamma(1.0 + z2)) +
                    ln_gamma(1.0 + z2 + I * z1 / 2.0);
    const cplx t = sin_pi(z2) / cos_pi(z2);
    if (t == cplx{0.0}) fail(ErrorKind::condition, "tan(pi rho) = 0");
    return std::exp(lg) / t;
}

cplx chi1(const MonodromyPoint& g, cplx z) {
    return g.g11 * std::exp(I * pi * z) * std::exp(I * pi / 4.0) + g.g21 * std::exp(-I * pi * z) * std::exp(-I * pi / 4.0);
}

cplx chi2(const MonodromyPoint& g, cplx z) {
    return g.g12 * std::exp(I * pi * z) * std::exp(I * pi / 4.0) + g.g22 * std::exp(-I * pi * z) * std::exp(-I * pi / 4.0);
}

cplx Q_fn(cplx z, const EquationParams& p) {
    return 4.0 * digamma(1.0) - digamma(I * z / 2.0) + std::log(2.0) - std::log(std::abs(p.eb()));
}

SmallTauChart small_tau_chart(const MonodromyPoint& pt, int eps1, const EquationParams& p, std::optional<cplx> rho) {
    validate(p);
    require_eps1(eps1, true);
    return small_tau_chart_mapped(apply_F(pt, eps1, p.eps2), pt.a, eps1, p, rho);
}

SmallTauChart small_tau_chart_mapped(const MonodromyPoint& m, cplx a, int eps1, const EquationParams& p,
                                     std::optional<cplx> rho_override) {
    validate(p);
    SmallTauChart c;
    c.eps1 = eps1;
    c.params = p;
    c.mapped = m;
    c.a = a;
    if (!(std::abs(a.imag()) < 1.0)) fail(ErrorKind::condition, "small-tau chart needs |Im a| < 1");
    if (std::abs(m.g11 * m.g22) < kZeroTol) fail(ErrorKind::condition, "small-tau chart needs g11 g22 != 0");
    const cplx as = signed_a(p, a);
    if (std::abs(m.s00 - 2.0 * I) < kZeroTol) {
        if (std::abs(a) < kZeroTol) fail(ErrorKind::condition, "logarithmic chart needs a != 0");
        c.log_mode = true;
        c.rho = 0.0;
        c.chi1 = {chi1(m, 0.0), chi1(m, 0.0)};
        c.chi2 = {chi2(m, 0.0), chi2(m, 0.0)};
        c.Q = {Q_fn(as, p), Q_fn(-as, p)};
        c.a2 = c.chi1[0] * (1.0 - I * as / 2.0 * c.Q[0]) +
               pi * as / 4.0 * (m.g21 * std::exp(-I * pi / 4.0) - 3.0 * m.g11 * std::exp(I * pi / 4.0));
        c.b2 = I * as * c.chi1[0];
        return c;
    }
    cplx rho = rho_from(m);
    if (rho_override) {
        const cplx target = -I * m.s00 / 2.0;
        if (std::abs(std::cos(2.0 * pi * *rho_override) - target) > 1e-10 * std::max(1.0, std::abs(target)))
            fail(ErrorKind::validation, "rho override does not solve cos(2 pi rho) = -i s00/2");
        rho = *rho_override;
    }
    if (std::abs(rho) < kZeroTol) fail(ErrorKind::condition, "rho = 0 needs s00 = 2i (logarithmic chart)");
    if (!(std::abs(rho.real()) < 0.5 - 1e-12)) fail(ErrorKind::condition, "small-tau chart needs |Re rho| < 1/2");
    c.rho = rho;
    const std::array<cplx, 2> r{rho, -rho};
    for (int k = 0; k < 2; ++k) {
        c.p1[k] = frak_p(as, r[k], p);
        c.p2[k] = frak_p(-as, r[k], p);
        c.chi1[k] = chi1(m, r[k]);
        c.chi2[k] = chi2(m, r[k]);
    }
    return c;
}

namespace {

struct SmallParts {
    cplx K;       // prefactor without tau
    cplx tc;      // tau on the ray
    cplx B1, B2;  // brackets
    cplx dB1, dB2;
    cplx diff1;   // T1(rho) - T1(-rho)
};

SmallParts small_parts(const SmallTauChart& c, double tau) {
    require_tau(tau);
    const EquationParams& p = c.params;
    const cplx as = signed_a(p, c.a);
    SmallParts s;
    s.tc = double(ray_sign(c.eps1)) * tau;
    if (c.log_mode) {
        s.K = double(p.sign2()) * p.b * std::exp(pi * as / 2.0) / (2.0 * as * std::sinh(pi * as / 2.0));
        const MonodromyPoint& m = c.mapped;
        const double L = std::log(tau);
        const cplx a1 = c.a2, b1 = c.b2;
        const cplx a2 = c.chi2[0] * (1.0 + I * as / 2.0 * c.Q[1]) +
                        pi * as / 4.0 * (m.g12 * std::exp(I * pi / 4.0) - 3.0 * m.g22 * std::exp(-I * pi / 4.0));
        const cplx b2 = -I * as * c.chi2[0];
        s.B1 = a1 + b1 * L;
        s.B2 = a2 + b2 * L;
        s.dB1 = b1 / s.tc;
        s.dB2 = b2 / s.tc;
        return s;
    }
    s.K = double(p.sign2()) * p.b / (16.0 * pi) * std::exp(pi * as / 2.0);
    const std::array<cplx, 2> r{c.rho, -c.rho};
    std::array<cplx, 2> t1, t2;
    for (int k = 0; k < 2; ++k) {
        const cplx m = mag_pow(tau, r[k]);
        t1[k] = c.p1[k] * c.chi1[k] * m;
        t2[k] = c.p2[k] * std::exp(-I * pi * r[k]) * c.chi2[k] * m;
    }
    s.B1 = t1[0] + t1[1];
    s.B2 = t2[0] + t2[1];
    s.dB1 = (2.0 * r[0] * t1[0] + 2.0 * r[1] * t1[1]) / s.tc;
    s.dB2 = (2.0 * r[0] * t2[0] + 2.0 * r[1] * t2[1]) / s.tc;
    s.diff1 = 2.0 * c.rho * (t1[0] - t1[1]);
    return s;
}

cplx leading_exponent(const SmallTauChart& c) {
    const cplx as = signed_a(c.params, c.a);
    cplx e = as * (as - I) + 0.25;
    if (!c.log_mode) e += 8.0 * c.rho * c.rho;
    return e;
}

}  // namespace

cplx u_small(const SmallTauChart& c, double tau) {
    const SmallParts s = small_parts(c, tau);
    return s.K * s.tc * s.B1 * s.B2;
}

cplx du_small(const SmallTauChart& c, double tau) {
    const SmallParts s = small_parts(c, tau);
    return s.K * s.B1 * s.B2 + s.K * s.tc * (s.dB1 * s.B2 + s.B1 * s.dB2);
}

cplx H_small(const SmallTauChart& c, double tau) {
    const SmallParts s = small_parts(c, tau);
    const cplx base = leading_exponent(c) / (2.0 * s.tc);
    if (c.log_mode) return base + c.b2 / (s.tc * s.B1);
    return s.diff1 / s.B1 / s.tc + base;
}

cplx tau_function_exponent(const SmallTauChart& c) { return leading_exponent(c) / 2.0; }

cplx tau_function_asymptotic(const SmallTauChart& c, double tau, cplx konst) {
    const SmallParts s = small_parts(c, tau);
    return konst * std::pow(s.tc, tau_function_exponent(c)) * s.B1;
}

ImagEvaluation u_imag_detail(const MonodromyPoint& pt, int eps1, const EquationParams& p, double tau, Regime r) {
    validate(p);
    require_eps1(eps1, false);
    const MonodromyPoint hat = apply_Fhat(pt, eps1, p.eps2);
    ImagEvaluation e;
    if (r == Regime::large) {
        e.kernel = u_large(large_tau_chart_mapped(hat, pt.a, 0, p), tau);
        e.prefactor = (eps1 == 1 ? -1.0 : 1.0) * I;  // (-1)^{(1+eps1)/2} i
    } else {
        e.kernel = u_small(small_tau_chart_mapped(hat, pt.a, 0, p), tau);
        e.prefactor = double(eps1) * I;  // tau = i eps1 |tau|
    }
    e.value = e.prefactor * e.kernel;
    return e;
}

cplx u_imag(const MonodromyPoint& pt, int eps1, const EquationParams& p, double tau, Regime r) {
    return u_imag_detail(pt, eps1, p, tau, r).value;
}

std::array<double, 4> remark31_identities(cplx a, cplx w, cplx g, cplx wp, cplx gp, cplx wm, cplx gm) {
    // g = g11 g22 = e^{-2 pi i (nu+1)}
    const cplx E = 1.0 / g, ea = std::exp(-pi * a);
    return {
        std::abs(wp - (w + (I * ea + 1.0 / w) * E)),
        std::abs(gp - (-w * (w * g + I * ea))),
        std::abs(wm - w * g / (g - 1.0 - I * w * ea)),
        std::abs(gm - (1.0 - E) * (1.0 - g + I * w * ea) / (w * w)),
    };
}

std::array<double, 4> remark31_residuals(const MonodromyPoint& pt) {
    const EquationParams p{1, 1.0, 0};
    const LargeTauChart c0 = large_tau_chart(pt, 0, p), cp = large_tau_chart(pt, 1, p), cm = large_tau_chart(pt, -1, p);
    for (const auto* c : {&c0, &cp, &cm})
        if (c->special != SpecialChart::none) fail(ErrorKind::condition, "connection identities need generic charts");
    auto prod = [](const LargeTauChart& c) { return c.mapped.g11 * c.mapped.g22; };
    return remark31_identities(pt.a, c0.omega, prod(c0), cp.omega, prod(cp), cm.omega, prod(cm));
}

// ---------------------------------------------------------------- fitting

namespace {

struct FitData {
    std::vector<double> s, th, lth;
    std::vector<cplx> r;  // u / (sign C) - sqrt(theta/12)
};

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

CMat design(const FitData& d, cplx nu, bool nuisance, bool main_cols) {
    const Eigen::Index n = Eigen::Index(d.s.size());
    const int cols = (main_cols ? 2 : 0) + (nuisance ? 3 : 0);
    CMat M(n, cols);
    for (Eigen::Index k = 0; k < n; ++k) {
        const cplx ep = std::exp(I * d.th[k] + nu * d.lth[k]), em = std::exp(-I * d.th[k] - nu * d.lth[k]);
        int j = 0;
        if (main_cols) {
            M(k, j++) = ep;
            M(k, j++) = em;
        }
        if (nuisance) {
            const double w = 1.0 / std::cbrt(d.s[k]);
            M(k, j++) = w;
            M(k, j++) = w * ep * ep;
            M(k, j++) = w * em * em;
        }
    }
    return M;
}

CVec rvec(const FitData& d) {
    CVec v(Eigen::Index(d.r.size()));
    for (std::size_t k = 0; k < d.r.size(); ++k) v(Eigen::Index(k)) = d.r[k];
    return v;
}

cplx model_main(cplx nu, cplx z, double th, double lth) {
    return std::sqrt(nu) * std::exp(0.75 * pi * I) * std::cosh(I * th + nu * lth + z);
}

struct LMFunctor {
    using Scalar = double;
    using InputType = Eigen::VectorXd;
    using ValueType = Eigen::VectorXd;
    using JacobianType = Eigen::MatrixXd;
    enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

    const FitData* d;
    bool nuisance;
    int inputs() const { return 4; }
    int values() const { return int(2 * d->s.size()); }

    int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
        const cplx nu{x[0], x[1]}, z{x[2], x[3]};
        CVec res(Eigen::Index(d->s.size()));
        for (std::size_t k = 0; k < d->s.size(); ++k)
            res(Eigen::Index(k)) = d->r[k] - model_main(nu, z, d->th[k], d->lth[k]);
        if (nuisance) {
            const CMat N = design(*d, nu, true, false);
            const CVec c = N.colPivHouseholderQr().solve(res);
            res -= N * c;
        }
        for (Eigen::Index k = 0; k < res.size(); ++k) {
            f[2 * k] = res(k).real();
            f[2 * k + 1] = res(k).imag();
        }
        return 0;
    }
};

double rms(const Eigen::VectorXd& f) { return f.size() ? std::sqrt(f.squaredNorm() / double(f.size())) : 0.0; }

}  // namespace

FitResult fit_large_tau(const Trajectory& traj, const EquationParams& p, const FitOptions& opt) {
    validate(p);
    FitData d;
    int eps1 = 0;
    if (!traj.samples.empty()) {
        const double arg = std::arg(traj.samples.front().tau);
        eps1 = std::abs(arg) < pi / 2 ? 0 : (arg > 0 ? 1 : -1);
    }
    const double C = ray_sign(eps1) * p.eps * std::sqrt(std::abs(p.eb())) / std::pow(3.0, 0.25);
    for (const auto& s : traj.samples) {
        const double t = std::abs(s.tau);
        if (opt.window_hi > 0 && (t < opt.window_lo || t > opt.window_hi)) continue;
        const double th = theta(t, p);
        d.s.push_back(t);
        d.th.push_back(th);
        d.lth.push_back(std::log(th));
        d.r.push_back(s.u / C - std::sqrt(th / 12.0));
    }
    if (d.s.size() < 16) fail(ErrorKind::validation, "fit needs at least 16 samples in the window");
    if (d.th.front() <= 50.0) fail(ErrorKind::validation, "fit window must start where theta > 50");

    const CVec r = rvec(d);
    FitResult out;
    cplx nu = 0.0;
    CVec coef;
    CMat M;
    for (int it = 0; it < 200; ++it) {
        M = design(d, nu, opt.nuisance, true);
        coef = M.colPivHouseholderQr().solve(r);
        const cplx next = 4.0 * I * coef(0) * coef(1);
        out.iterations = it + 1;
        const double step = std::abs(next - nu);
        nu = next;
        if (!std::isfinite(nu.real()) || !std::isfinite(nu.imag()) || std::abs(nu.real()) > 0.5)
            fail(ErrorKind::fit, "fixed-point iteration for nu+1 diverged");
        if (step < 1e-14) break;
    }
    double amp = 0.0;
    for (std::size_t k = 0; k < d.s.size(); ++k)
        amp = std::max(amp, std::abs(coef(0) * M(Eigen::Index(k), 0) + coef(1) * M(Eigen::Index(k), 1)));
    out.amplitude = std::abs(C) * amp;
    {
        Eigen::JacobiSVD<CMat> svd(M);
        const auto& sv = svd.singularValues();
        out.condition = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
    }
    double umax = 0.0;
    for (std::size_t k = 0; k < d.s.size(); ++k) umax = std::max(umax, std::abs(C * d.r[k]) + std::abs(C) * std::sqrt(d.th[k] / 12.0));
    if (out.amplitude < opt.special_threshold * std::max(1.0, umax) || nu == cplx{0.0}) {
        out.special = true;
        out.nu_plus_1 = 0.0;
        out.z = 0.0;
        out.residual_norm = (r - M * coef).norm() / std::sqrt(double(r.size()));
        return out;
    }
    const cplx ez = 2.0 * coef(0) / (std::sqrt(nu) * std::exp(0.75 * pi * I));
    cplx z = std::log(ez);

    LMFunctor fn{&d, opt.nuisance};
    Eigen::NumericalDiff<LMFunctor> nd(fn);
    Eigen::LevenbergMarquardt<Eigen::NumericalDiff<LMFunctor>> lm(nd);
    lm.parameters.xtol = 1e-14;
    lm.parameters.ftol = 1e-14;
    lm.parameters.maxfev = 2000;
    Eigen::VectorXd x(4);
    x << nu.real(), nu.imag(), z.real(), z.imag();
    Eigen::VectorXd f0(fn.values());
    fn(x, f0);
    const double r0 = rms(f0);
    Eigen::VectorXd x1 = x;
    lm.minimize(x1);
    Eigen::VectorXd f1(fn.values());
    fn(x1, f1);
    const double r1 = rms(f1);
    if (std::isfinite(r1) && r1 <= r0) {
        nu = {x1[0], x1[1]};
        z = {x1[2], x1[3]};
        out.residual_norm = r1;
    } else {
        out.residual_norm = r0;
    }
    out.iterations += int(lm.nfev);
    out.nu_plus_1 = nu;
    out.z = z;
    return out;
}

double z_distance(cplx zf, cplx nuf, cplx zp, cplx nup) {
    const cplx sf = std::sqrt(nuf), sp = std::sqrt(nup);
    if (std::abs(sf + sp) < std::abs(sf - sp)) zf += I * pi;
    cplx d = zf - zp;
    d.imag(std::remainder(d.imag(), 2.0 * pi));
    return std::abs(d);
}

ConnectionReport verify_connection(const MonodromyPoint& pt, const EquationParams& p, double tau0, double tau1,
                                   const ConnectionOptions& opt) {
    validate(p);
    if (!(tau0 > 0.0) || !(tau1 > tau0)) fail(ErrorKind::validation, "need 0 < tau0 < tau1");
    const LargeTauChart lc = large_tau_chart(pt, opt.eps1, p);
    const SmallTauChart sc = small_tau_chart(pt, opt.eps1, p);

    std::set<double> t0s{tau0}, t1s{tau1};
    t0s.insert(opt.tau0_list.begin(), opt.tau0_list.end());
    t1s.insert(opt.tau1_list.begin(), opt.tau1_list.end());
    const double tmax = *t1s.rbegin();
    if (*t0s.rbegin() >= *t1s.begin() * opt.window_fraction)
        fail(ErrorKind::validation, "every tau0 must lie below every fit window");

    ConnectionReport rep;
    rep.special = lc.special != SpecialChart::none;
    rep.predicted_nu = lc.nu_plus_1;
    rep.predicted_z = lc.z;
    const double s1 = ray_sign(opt.eps1);
    constexpr int kWindowSamples = 4000;

    for (double t0 : t0s) {
        IntegrateOptions io;
        io.tol = opt.tol;
        for (double t1 : t1s) {
            const double lo = opt.window_fraction * t1;
            for (int k = 0; k < kWindowSamples; ++k) io.dense.push_back(lo + (t1 - lo) * k / (kWindowSamples - 1));
        }
        const SolutionState seed{s1 * t0, u_small(sc, t0), du_small(sc, t0), std::nullopt};
        const Trajectory tr = integrate_ray(seed, pt.a, p, tmax, io);
        for (double t1 : t1s) {
            FitOptions fo;
            fo.window_lo = opt.window_fraction * t1;
            fo.window_hi = t1;
            ConvergenceRow row{t0, t1, 0, 0, fit_large_tau(tr, p, fo)};
            if (rep.special) {
                row.err_nu = std::abs(row.fit.nu_plus_1);
                row.err_z = 0.0;
            } else {
                row.err_nu = std::abs(row.fit.nu_plus_1 - lc.nu_plus_1);
                row.err_z = row.fit.special ? INFINITY : z_distance(row.fit.z, row.fit.nu_plus_1, lc.z, lc.nu_plus_1);
            }
            if (t0 == tau0 && t1 == tau1) {
                rep.fitted = row.fit;
                rep.err_nu = row.err_nu;
                rep.err_z = row.err_z;
                // Leading coefficient from a two-column fit u ~ c tau^{1/3} + d tau^{-1/3}.
                Eigen::MatrixXcd A(0, 2);
                std::vector<cplx> rhs;
                std::vector<std::pair<double, cplx>> pts;
                for (const auto& s : tr.samples) {
                    const double t = std::abs(s.tau);
                    if (t >= fo.window_lo && t <= fo.window_hi) pts.emplace_back(t, s.u);
                }
                A.resize(Eigen::Index(pts.size()), 2);
                Eigen::VectorXcd b(Eigen::Index(pts.size()));
                for (std::size_t k = 0; k < pts.size(); ++k) {
                    A(Eigen::Index(k), 0) = s1 * std::cbrt(pts[k].first);
                    A(Eigen::Index(k), 1) = s1 / std::cbrt(pts[k].first);
                    b(Eigen::Index(k)) = pts[k].second;
                }
                const Eigen::VectorXcd cf = A.colPivHouseholderQr().solve(b);
                rep.leading_coefficient_error =
                    std::abs(cf(0) - p.eps * std::pow(std::abs(p.eb()), 2.0 / 3.0) / 2.0);
            }
            rep.table.push_back(std::move(row));
        }
    }
    return rep;
}

}  // namespace dp3
