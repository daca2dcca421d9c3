#include "dp3/ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace dp3 {
namespace {

using Vec = std::array<cplx, 3>;  // u, u', phi

void need_u(cplx u, cplx tau) {
    if (u == cplx{0.0}) fail(ErrorKind::singular, "u = 0 where the equation is singular");
    if (tau == cplx{0.0}) fail(ErrorKind::singular, "tau = 0 where the equation is singular");
}

Vec field(cplx tau, const Vec& y, cplx a, const EquationParams& p) {
    const SolutionState s{tau, y[0], y[1], y[2]};
    const auto [du, ddu] = dp3_rhs(s, a, p);
    return {du, ddu, phi_rhs(s, a, p)};
}

Vec axpy(const Vec& y, double h, std::initializer_list<std::pair<double, const Vec*>> terms) {
    Vec r = y;
    for (const auto& [c, k] : terms)
        for (int i = 0; i < 3; ++i) r[i] += h * c * (*k)[i];
    return r;
}

bool finite(const Vec& y) {
    return std::all_of(y.begin(), y.end(), [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

}  // namespace

std::pair<cplx, cplx> dp3_rhs(const SolutionState& s, cplx a, const EquationParams& p) {
    need_u(s.u, s.tau);
    const cplx u = s.u, du = s.du, t = s.tau;
    const double b = p.b;
    const cplx ddu = du * du / u - du / t + (-8.0 * double(p.eps) * u * u + 2.0 * a * b) / t + b * b / u;
    return {du, ddu};
}

cplx phi_rhs(const SolutionState& s, cplx a, const EquationParams& p) {
    need_u(s.u, s.tau);
    return 2.0 * a / s.tau + p.b / s.u;
}

Trajectory integrate_ray(const SolutionState& init, cplx a, const EquationParams& p, double tau_end, double tol) {
    IntegrateOptions o;
    o.tol = tol;
    return integrate_ray(init, a, p, tau_end, o);
}

Trajectory integrate_ray(const SolutionState& init, cplx a, const EquationParams& p, double tau_end,
                         const IntegrateOptions& opt) {
    validate(p);
    if (!(opt.tol >= 1e-13 && opt.tol <= 1e-6)) fail(ErrorKind::validation, "tol must lie in [1e-13, 1e-6]");
    const double s0 = std::abs(init.tau);
    if (s0 == 0.0) fail(ErrorKind::validation, "initial tau must be nonzero");
    if (!(tau_end > 0.0)) fail(ErrorKind::validation, "tau_end must be positive");
    const cplx dir = init.tau / s0;
    const int sgn = tau_end >= s0 ? 1 : -1;
    for (double d : opt.dense)
        if ((d - s0) * sgn < 0.0 || (tau_end - d) * sgn < 0.0)
            fail(ErrorKind::validation, "dense output point outside the integration range");

    const bool has_phi = init.phi.has_value();
    Trajectory tr{p, a, {}, {}};
    auto emit = [&](double s, const Vec& y) {
        SolutionState st{dir * s, y[0], y[1], std::nullopt};
        if (has_phi) st.phi = y[2];
        tr.samples.push_back(st);
        tr.H.push_back(hamiltonian_u(st, a, p));
    };
    auto f = [&](double s, const Vec& y) {
        Vec k = field(dir * s, y, a, p);
        for (auto& v : k) v *= dir;
        return k;
    };

    std::vector<double> dense = opt.dense;
    if (sgn > 0) std::sort(dense.begin(), dense.end());
    else std::sort(dense.begin(), dense.end(), std::greater<>());
    std::size_t next = 0;

    Vec y{init.u, init.du, init.phi.value_or(cplx{0.0})};
    double s = s0;
    if (dense.empty()) emit(s, y);
    while (next < dense.size() && dense[next] == s) emit(dense[next++], y);

    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5, a31 = 3.0 / 40, a32 = 9.0 / 40, a41 = 44.0 / 45, a42 = -56.0 / 15,
                     a43 = 32.0 / 9, a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729, a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656, a71 = 35.0 / 384, a73 = 500.0 / 1113,
                     a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                     e6 = 22.0 / 525, e7 = -1.0 / 40;
    constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                     d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                     d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

    const double span = std::abs(tau_end - s0);
    double h = sgn * std::min(1e-3 * std::max(s0, 1e-3), span);
    Vec k1 = f(s, y);
    long steps = 0;
    while ((tau_end - s) * sgn > 0.0) {
        if (++steps > opt.max_steps) {
            std::ostringstream os;
            os << "step budget exhausted near |tau| = " << s;
            fail(ErrorKind::integration, os.str());
        }
        if ((s + h - tau_end) * sgn > 0.0) h = tau_end - s;
        Vec k2, k3, k4, k5, k6, k7, y1;
        bool ok = true;
        try {
            k2 = f(s + c2 * h, axpy(y, h, {{a21, &k1}}));
            k3 = f(s + c3 * h, axpy(y, h, {{a31, &k1}, {a32, &k2}}));
            k4 = f(s + c4 * h, axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
            k5 = f(s + c5 * h, axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
            k6 = f(s + h, axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
            y1 = axpy(y, h, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
            k7 = f(s + h, y1);
            ok = finite(y1) && finite(k7);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::singular) throw;
            ok = false;
        }
        double err = 1e10;
        if (ok) {
            err = 0.0;
            for (int i = 0; i < (has_phi ? 3 : 2); ++i) {
                const cplx ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
                const double sc = opt.tol + opt.tol * std::max(std::abs(y[i]), std::abs(y1[i]));
                err = std::max(err, std::abs(ei) / sc);
            }
        }
        if (err <= 1.0) {
            const double snew = s + h;
            if (!dense.empty()) {
                Vec r5;
                for (int i = 0; i < 3; ++i)
                    r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
                while (next < dense.size() && (snew - dense[next]) * sgn >= 0.0) {
                    const double th = (dense[next] - s) / h, th1 = 1.0 - th;
                    Vec yd;
                    for (int i = 0; i < 3; ++i) {
                        const cplx ydiff = y1[i] - y[i], bspl = h * k1[i] - ydiff;
                        const cplx r4 = ydiff - h * k7[i] - bspl;
                        yd[i] = y[i] + th * (ydiff + th1 * (bspl + th * (r4 + th1 * r5[i])));
                    }
                    emit(dense[next++], yd);
                }
            }
            s = snew;
            y = y1;
            k1 = k7;
            if (dense.empty()) emit(s, y);
        }
        const double fac = ok ? std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0) : 0.25;
        h *= err <= 1.0 ? std::min(fac, 5.0) : std::min(fac, 1.0);
        if (std::abs(h) < 1e-14 * std::max(std::abs(s), 1.0)) {
            std::ostringstream os;
            os << "step size underflow near tau = " << (dir * s).real() << (dir * s).imag() << "i"
               << " (|tau| = " << s << "), likely a zero or pole of u";
            fail(ErrorKind::integration, os.str());
        }
    }
    return tr;
}

cplx hamiltonian_u(const SolutionState& s, cplx a, const EquationParams& p) {
    need_u(s.u, s.tau);
    const cplx am = a - 0.5 * I, u = s.u, t = s.tau;
    const double b = p.b;
    return am * b / u + am * am / (2.0 * t) + t / (4.0 * u * u) * (s.du * s.du + b * b) + 4.0 * double(p.eps) * u;
}

cplx hamiltonian_pq(cplx pv, cplx q, cplx tau, cplx a, const EquationParams& p, int e1) {
    const cplx c = a * I + 0.5;
    return pv * pv * q * q / tau - 2.0 * double(e1) * pv * q * c / tau + 4.0 * double(p.eps) * q +
           I * p.b * pv + c * c / (2.0 * tau);
}

cplx hamiltonian_pq_dtau(cplx pv, cplx q, cplx tau, cplx a, int e1) {
    const cplx c = a * I + 0.5;
    return -(pv * pv * q * q - 2.0 * double(e1) * pv * q * c + c * c / 2.0) / (tau * tau);
}

cplx p_from_u(const SolutionState& s, cplx a, const EquationParams& p, int e1) {
    need_u(s.u, s.tau);
    return s.tau * (s.du - I * p.b) / (2.0 * s.u * s.u) + (a * I + 0.5) * double(e1) / s.u;
}

SigmaF sigma_and_f(const SolutionState& s, cplx a, const EquationParams& p) {
    const int e1 = -1;
    const cplx pv = p_from_u(s, a, p, e1), q = s.u;
    const cplx x = pv * q - double(e1) * (a * I + 0.5 - e1 / 2.0);
    return {x * x + s.tau * (4.0 * double(p.eps) * q + I * p.b * pv), pv * q / 2.0};
}

cplx sigma_ode_residual(cplx t, cplx s, cplx ds, cplx dds, cplx a, const EquationParams& p) {
    const double e1 = -1.0, eb = p.eb();
    const cplx l = t * dds - ds;
    // Sign of the 32 i eps b term fixed by a high-precision fit on integrated solutions.
    return l * l - 2.0 * (2.0 * s - t * ds) * ds * ds -
           32.0 * I * eb * t * (((1.0 - e1) / 2.0 - a * I * e1) * ds + 2.0 * I * eb * t);
}

cplx f_ode_residual(cplx t, cplx f, cplx df, cplx ddf, cplx a, const EquationParams& p) {
    const double e1 = -1.0, eb = p.eb();
    const cplx l = ddf + 4.0 * I * eb, m = 4.0 * f - e1 * (2.0 * I * a + 1.0);
    return t * t * l * l - m * m * (df * df + 8.0 * I * eb * f);
}

ABCD to_abcd(const SolutionState& s, cplx a, const EquationParams& p) {
    if (!s.phi) fail(ErrorKind::validation, "to_abcd needs phi");
    need_u(s.u, s.tau);
    const cplx t = s.tau, u = s.u, e = std::exp(I * *s.phi), ei = 1.0 / e;
    const cplx v = u / t, dv = s.du / t - u / (t * t);
    const cplx dphi = phi_rhs(s, a, p);
    const cplx A = v * e, B = -v * ei;
    const cplx dA = dv * e + I * dphi * A, dB = -dv * ei - I * dphi * B;
    const double ep = p.eps;
    return {A, B, ep * t / (4.0 * u) * dA, -ep * t / (4.0 * u) * dB, u / (ep * t)};
}

HamiltonianSplit hamiltonian_abcd(const ABCD& v, cplx tau, cplx a, const EquationParams& p) {
    if (v.A * v.B == cplx{0.0}) fail(ErrorKind::singular, "A B = 0");
    const cplx w = a * I + 0.5 + 2.0 * tau * v.A * v.D / v.root;
    const cplx sq = w * w / (2.0 * tau), idb = I * p.eb() * v.D / v.B, ad = v.A * v.D / v.root;
    const cplx H = sq + 4.0 * tau * v.root - idb + 2.0 * tau * v.C * v.D + ad;
    const cplx diff = sq - idb - 2.0 * tau * v.C * v.D - ad;
    return {H, (H + diff) / 2.0, (H - diff) / 2.0};
}

double split_residual(const HamiltonianSplit& h, cplx tau, cplx a) {
    const cplx am = a - 0.5 * I;
    return std::abs(h.H0 - h.Hinf + am * am / (2.0 * tau));
}

double residual_on_grid(std::span<const cplx> tau, std::span<const cplx> u, cplx a, const EquationParams& p) {
    if (tau.size() != u.size() || tau.size() < 5) fail(ErrorKind::validation, "need >= 5 matching samples");
    double worst = 0.0;
    // fourth-order central differences
    for (std::size_t i = 2; i + 2 < tau.size(); ++i) {
        const cplx h = (tau[i + 2] - tau[i - 2]) / 4.0;
        const cplx du = (u[i - 2] - 8.0 * u[i - 1] + 8.0 * u[i + 1] - u[i + 2]) / (12.0 * h);
        const cplx ddu = (-u[i - 2] + 16.0 * u[i - 1] - 30.0 * u[i] + 16.0 * u[i + 1] - u[i + 2]) / (12.0 * h * h);
        const auto [d, rhs] = dp3_rhs({tau[i], u[i], du, std::nullopt}, a, p);
        worst = std::max(worst, std::abs(ddu - rhs));
    }
    return worst;
}

std::pair<cplx, cplx> hamiltonian_system_rhs(cplx pv, cplx q, cplx tau, cplx a, const EquationParams& p, int e1) {
    if (tau == cplx{0.0}) fail(ErrorKind::singular, "tau = 0");
    const cplx c = a * I + 0.5;
    const double e = e1;
    const cplx dq = 2.0 * pv * q * q / tau - 2.0 * e * q * c / tau + I * p.b;
    const cplx dp = -(2.0 * pv * pv * q / tau - 2.0 * e * pv * c / tau + 4.0 * double(p.eps));
    return {dp, dq};
}

SolutionState algebraic_solution(double tau, const EquationParams& p) {
    const double c = std::pow(cbrt_real(p.b), 2) / (2.0 * p.eps);
    const double t3 = cbrt_real(tau);
    return {tau, c * t3, c / (3.0 * t3 * t3), std::nullopt};
}

}  // namespace dp3
