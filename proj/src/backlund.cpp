#include "dp3/backlund.hpp"

#include <cmath>
#include <sstream>

namespace dp3 {
namespace {

cplx eval_jet(const Jet& j, cplx tau, cplx* deriv) {
    const cplx d = tau - j.tau0();
    cplx v = 0.0, dv = 0.0;
    for (std::size_t k = j.order(); k-- > 0;) {
        v = v * d + j[k];
        if (k > 0) dv = dv * d + double(k) * j[k];
    }
    if (deriv) *deriv = dv;
    return v;
}

SolutionState state_from_jet(const Jet& j) { return {j.tau0(), j.value(), j.d1(), std::nullopt}; }

}  // namespace

std::pair<SolutionState, cplx> backlund_step(const SolutionState& s, cplx a, const EquationParams& p, Direction dir) {
    if (s.u == cplx{0.0}) fail(ErrorKind::singular, "Backlund step needs u != 0");
    const auto [du, ddu] = dp3_rhs(s, a, p);
    const cplx t = s.tau, u = s.u, ib = I * p.b;
    const cplx k = -I * p.eb() / 8.0;
    cplx N, dN, a1;
    if (dir == Direction::up) {
        N = t * (-du + ib) + (2.0 * a * I + 1.0) * u;
        dN = (-du + ib) - t * ddu + (2.0 * a * I + 1.0) * du;
        a1 = a - I;
    } else {
        N = t * (du + ib) + (2.0 * a * I - 1.0) * u;
        dN = (du + ib) + t * ddu + (2.0 * a * I - 1.0) * du;
        a1 = a + I;
    }
    const cplx u2 = u * u;
    return {{t, k * N / u2, k * (dN / u2 - 2.0 * N * du / (u2 * u)), std::nullopt}, a1};
}

Jet backlund_step_jet(const Jet& u, cplx a, const EquationParams& p, Direction dir) {
    const std::size_t m = u.order() - 1;
    const Jet uu = u.truncated(m), du = u.derivative();
    const Jet t = Jet::variable(m, u.tau0());
    const cplx ib = I * p.b;
    const double sg = dir == Direction::up ? -1.0 : 1.0;
    const Jet N = t * (sg * du + ib) + (2.0 * a * I - sg) * uu;
    return (-I * p.eb() / 8.0) * (N / (uu * uu));
}

Jet solution_jet(const SolutionState& s, cplx a, const EquationParams& p, std::size_t order) {
    if (order < 2) fail(ErrorKind::validation, "jet order must be >= 2");
    if (s.u == cplx{0.0} || s.tau == cplx{0.0}) fail(ErrorKind::singular, "jet needs u != 0 and tau != 0");
    Jet u(order, s.tau);
    u[0] = s.u;
    u[1] = s.du;
    const Jet t = Jet::variable(order, s.tau);
    const double b = p.b;
    for (std::size_t k = 2; k < order; ++k) {
        const Jet du = u.derivative().truncated(k - 1);
        const Jet uk = u.truncated(k - 1), tk = t.truncated(k - 1);
        const Jet rhs = du * du / uk - du / tk +
                        (Jet::constant(k - 1, s.tau, 2.0 * a * b) + (-8.0 * double(p.eps)) * (uk * uk)) / tk +
                        Jet::constant(k - 1, s.tau, b * b) / uk;
        u[k] = rhs[k - 2] / double(k * (k - 1));
    }
    return u;
}

Jet algebraic_jet(cplx tau, const EquationParams& p, std::size_t order) {
    if (tau.imag() != 0.0 || tau.real() <= 0.0) fail(ErrorKind::validation, "algebraic jet is built on tau > 0");
    const double t0 = tau.real();
    const double c = std::pow(cbrt_real(p.b), 2) / (2.0 * p.eps) * cbrt_real(t0);
    Jet j(order, tau);
    double binom = 1.0;
    for (std::size_t k = 0; k < order; ++k) {
        j[k] = c * binom * std::pow(t0, -double(k));
        binom *= (1.0 / 3.0 - double(k)) / double(k + 1);
    }
    return j;
}

bool is_algebraic_seed(const SolutionState& s, cplx a0, const EquationParams& p) {
    if (a0 != cplx{0.0} || s.tau.imag() != 0.0 || s.tau.real() <= 0.0) return false;
    const SolutionState e = algebraic_solution(s.tau.real(), p);
    return std::abs(s.u - e.u) <= 1e-14 * std::abs(e.u) && std::abs(s.du - e.du) <= 1e-14 * std::abs(e.du);
}

namespace {

std::vector<SolutionState> ladder_states(const SolutionState& seed, cplx a0, const EquationParams& p, int count,
                                         Direction dir) {
    std::vector<SolutionState> out;
    if (is_algebraic_seed(seed, a0, p)) {
        Jet j = algebraic_jet(seed.tau, p, std::size_t(count) + 2);
        cplx a = a0;
        for (int n = 0; n < count; ++n) {
            if (j.value() == cplx{0.0}) {
                std::ostringstream os;
                os << "ladder breaks down: u_" << n << " = 0";
                fail(ErrorKind::ladder, os.str());
            }
            out.push_back({seed.tau, j.value(), j.d1(), std::nullopt});
            if (n + 1 < count) j = backlund_step_jet(j, a, p, dir);
            a += dir == Direction::up ? -I : I;
        }
        return out;
    }
    SolutionState s{seed.tau, seed.u, seed.du, std::nullopt};
    cplx a = a0;
    for (int n = 0; n < count; ++n) {
        if (s.u == cplx{0.0} || !std::isfinite(std::abs(s.u))) {
            std::ostringstream os;
            os << "ladder breaks down at n = " << n;
            fail(ErrorKind::ladder, os.str());
        }
        out.push_back(s);
        if (n + 1 < count) std::tie(s, a) = backlund_step(s, a, p, dir);
    }
    return out;
}

}  // namespace

std::vector<LadderEntry> ladder(const SolutionState& seed, cplx a0, const EquationParams& p, int n_max, Direction dir) {
    validate(p);
    if (n_max < 0) fail(ErrorKind::validation, "n_max must be >= 0");
    // One extra rung supplies g_{n_max}.
    const auto st = ladder_states(seed, a0, p, n_max + 2, dir);
    std::vector<LadderEntry> out;
    const cplx ieb = I * p.eb();
    for (int n = 0; n <= n_max; ++n) {
        LadderEntry e;
        e.n = n;
        e.a_n = dir == Direction::up ? a0 - I * double(n) : a0 + I * double(n);
        e.state = st[std::size_t(n)];
        const cplx t = e.state.tau;
        e.v = e.state.u / t;
        e.g = st[std::size_t(n) + 1].u / t * e.v;
        e.f = 2.0 * t * t / ieb * e.g;
        out.push_back(e);
    }
    return out;
}

std::vector<double> ladder_equation_residuals(const SolutionState& seed, cplx a0, const EquationParams& p, int n_max,
                                              Direction dir) {
    validate(p);
    const std::size_t order = std::size_t(n_max) + 4;
    Jet j = is_algebraic_seed(seed, a0, p) ? algebraic_jet(seed.tau, p, order) : solution_jet(seed, a0, p, order);
    std::vector<double> out;
    cplx a = a0;
    for (int n = 0; n <= n_max; ++n) {
        const auto [du, rhs] = dp3_rhs(state_from_jet(j), a, p);
        out.push_back(std::abs(j.d2() - rhs));
        if (n < n_max) j = backlund_step_jet(j, a, p, dir);
        a += dir == Direction::up ? -I : I;
    }
    return out;
}

Lattice lattice_from_string(const std::string& s) {
    if (s == "km") return Lattice::km;
    if (s == "km_literal") return Lattice::km_literal;
    if (s == "dp") return Lattice::dp;
    if (s == "toda") return Lattice::toda;
    if (s == "toda_derived") return Lattice::toda_derived;
    if (s == "f_rec") return Lattice::f_rec;
    fail(ErrorKind::validation, "unknown lattice '" + s + "'");
}

const char* to_string(Lattice l) {
    switch (l) {
        case Lattice::km: return "km";
        case Lattice::km_literal: return "km_literal";
        case Lattice::dp: return "dp";
        case Lattice::toda: return "toda";
        case Lattice::toda_derived: return "toda_derived";
        case Lattice::f_rec: return "f_rec";
    }
    return "?";
}

std::vector<LatticeResidual> lattice_residuals(const std::vector<LadderEntry>& lad, Lattice which, cplx a0,
                                               const EquationParams& p, const SeedFn& seed_fn) {
    validate(p);
    const int N = int(lad.size()) - 1;
    if (N >= 1 && std::abs(lad[1].a_n - (lad[0].a_n - I)) > 1e-15)
        fail(ErrorKind::validation, "lattice identities are indexed along the upward ladder");
    const cplx ieb4 = I * p.eb() / 4.0;
    std::vector<LatticeResidual> out;

    auto check = [](cplx x, const char* what) {
        if (x == cplx{0.0}) fail(ErrorKind::singular, std::string(what) + " vanishes at the test point");
    };

    if (which == Lattice::toda || which == Lattice::toda_derived) {
        if (lad.empty()) return out;
        const SolutionState& s0 = lad[0].state;
        SeedFn seed = seed_fn;
        if (!seed) {
            const Jet j = is_algebraic_seed(s0, a0, p) ? algebraic_jet(s0.tau, p, 16) : solution_jet(s0, a0, p, 16);
            seed = [j](cplx t) {
                cplx d;
                const cplx v = eval_jet(j, t, &d);
                return SolutionState{t, v, d, std::nullopt};
            };
        }
        const cplx t = s0.tau, dir = t / std::abs(t);
        const cplx h = 1e-4 * std::abs(t) * dir;
        const auto lp = ladder(seed(t + h), a0, p, N), lm = ladder(seed(t - h), a0, p, N);
        auto lng2 = [&](int n) {  // (ln g_n)''
            check(lad[std::size_t(n)].g, "g_n");
            const cplx g0 = lad[std::size_t(n)].g;
            return (std::log(lp[std::size_t(n)].g / g0) + std::log(lm[std::size_t(n)].g / g0)) / (h * h);
        };
        auto lng1 = [&](int n, const std::vector<LadderEntry>& L) { return L[std::size_t(n)].g; };
        if (which == Lattice::toda) {
            for (int n = 1; n + 1 <= N; ++n) {
                const cplx lhs = ieb4 * ieb4 * lng2(n);
                const cplx rhs = lad[std::size_t(n) + 1].g + lad[std::size_t(n) - 1].g - 2.0 * lad[std::size_t(n)].g;
                out.push_back({n, std::abs(lhs - rhs)});
            }
        } else {
            // In x = tau^2/2: d/dx = (1/tau) d/dtau, so d^2/dx^2 = tau^{-2} (d^2 - (1/tau) d).
            for (int n = 2; n + 2 <= N; ++n) {
                const cplx g0 = lng1(n, lad);
                const cplx d1 = (std::log(lng1(n, lp) / g0) - std::log(lng1(n, lm) / g0)) / (2.0 * h);
                const cplx lhs = ieb4 * ieb4 * (lng2(n) - d1 / t) / (t * t);
                auto g = [&](int k) { return lad[std::size_t(k)].g; };
                const cplx rhs = g(n + 1) * (g(n + 2) - g(n)) - g(n - 1) * (g(n) - g(n - 2));
                out.push_back({n, std::abs(lhs - rhs)});
            }
        }
        return out;
    }

    for (int n = 1; n + 1 <= N; ++n) {
        const LadderEntry &e = lad[std::size_t(n)], &ep = lad[std::size_t(n) + 1], &em = lad[std::size_t(n) - 1];
        const cplx t = e.state.tau;
        const cplx dv = e.state.du / t - e.state.u / (t * t);
        double r = 0.0;
        switch (which) {
            case Lattice::km: r = std::abs(ieb4 * dv - t * e.v * e.v * (ep.v - em.v)); break;
            case Lattice::km_literal: r = std::abs(ieb4 * dv - e.v * (ep.v - em.v)); break;
            case Lattice::dp:
                r = std::abs(e.v * e.v * (ep.v + em.v) - p.eb() / (4.0 * t * t) * (p.b + 2.0 * (a0 - I * double(n)) * e.v));
                break;
            case Lattice::f_rec: {
                const cplx ia0 = I * a0;
                const cplx lhs = 2.0 * e.f * (ep.f + e.f + (ia0 + double(n) + 1.0)) * (e.f + em.f + (ia0 + double(n)));
                r = std::abs(lhs - I * p.eb() * t * t);
                break;
            }
            default: break;
        }
        out.push_back({n, r});
    }
    return out;
}

LieImage lie_point_solution(const SolutionState& s, cplx a, const EquationParams& p, LieKind kind, int pp, int l,
                            Relabel relabel) {
    validate(p);
    if ((pp != 1 && pp != -1) || (l != 1 && l != -1)) fail(ErrorKind::validation, "p and l must be +-1");
    if (kind == LieKind::negate_tau)
        return {{-s.tau, -s.u, s.du, std::nullopt}, a, p};

    // e^{-i pi p} = -1 multiplies either eps or b; eps b moves by e^{-i pi p}.
    EquationParams q = p;
    if (relabel == Relabel::flip_eps) q.eps = -p.eps;
    else q.b = -p.b;
    q.eps2 = p.eps2 == 0 ? -pp : 0;
    if (p.eps2 != 0 && p.eps2 != pp) q.eps2 = 0;
    const double ee = double(p.eps * q.eps);
    if (kind == LieKind::negate_a) return {{s.tau, ee * s.u, ee * s.du, std::nullopt}, -a, q};
    const cplx il = I * double(l);
    return {{-il * s.tau, il * ee * s.u, -ee * s.du, std::nullopt}, a, q};
}

}  // namespace dp3
