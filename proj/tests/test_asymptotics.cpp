#include <doctest.h>

#include "dp3/asymptotics.hpp"
#include "dp3/sampler.hpp"

using namespace dp3;

namespace {

const EquationParams unit{1, 1.0, 0};

MonodromyPoint identity_point(cplx a = 0.0) { return from_branch(a, Branch1{1.0, 0.0, 0.0, 1.0}); }

bool close(cplx x, cplx y, double tol) { return std::abs(x - y) <= tol; }

// Branch-1 point with g11 g22 = e^{-2 pi i nu1}, g21 g12 = e^{-2 pi i nu1} - 1.
MonodromyPoint generic_point(cplx a, cplx nu1, cplx g11 = {1.2, 0.3}, cplx g12 = {0.4, -0.2}) {
    const cplx prod = std::exp(-2.0 * pi * I * nu1);
    return from_branch(a, Branch1{g11, g12, (prod - 1.0) / g12, prod / g11});
}

Trajectory synthetic(const LargeTauChart& c, double t0, double t1, int n) {
    Trajectory tr;
    tr.params = c.params;
    tr.a = c.a;
    for (int k = 0; k < n; ++k) {
        const double t = t0 + (t1 - t0) * k / (n - 1);
        tr.samples.push_back({t, u_large(c, t), 0.0, std::nullopt});
    }
    return tr;
}

}  // namespace

TEST_CASE("theta") {
    CHECK(theta(1.0, unit) == doctest::Approx(3.0 * std::sqrt(3.0)).epsilon(1e-15));
    CHECK(theta(8.0, make_params(-1, 8.0)) == doctest::Approx(3.0 * std::sqrt(3.0) * 2.0 * 4.0).epsilon(1e-15));
}

TEST_CASE("large-tau chart conditions") {
    const LargeTauChart c = large_tau_chart(identity_point(), 0, unit);
    CHECK(c.special != SpecialChart::none);
    CHECK(c.nu_plus_1 == cplx{0.0});

    const MonodromyPoint g = generic_point({0.1, 0.05}, {0.0, 0.1});
    const LargeTauChart cg = large_tau_chart(g, 0, unit);
    CHECK(close(cg.nu_plus_1, I / (2.0 * pi) * std::log(g.g11 * g.g22), 1e-15));
    CHECK(close(cg.nu_plus_1, {0.0, 0.1}, 1e-14));
    CHECK(close(cg.omega, g.g12 / g.g22, 1e-15));
    CHECK(close(cg.z, cg.z_unshifted + pi * I + 2.0 * pi * I * cg.nu_plus_1, 1e-14));

    try {
        large_tau_chart(generic_point(0.1, 0.4), 0, unit);
        FAIL("expected a condition error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::condition);
    }
}

TEST_CASE("u_large and H_large") {
    const LargeTauChart c = large_tau_chart(identity_point(), 0, unit);
    for (double t : {1.0, 8.0, 1000.0}) CHECK(close(u_large(c, t), 0.5 * std::cbrt(t), 1e-14));
    CHECK(close(H_large(c, 1.0), 2.875 - I, 1e-14));
    CHECK(std::abs(H_large(c, 8e6) / H_large(c, 1e6) - 2.0) < 1e-3);

    // the non-oscillatory part sqrt(theta/12) |eb|^{1/2} / 3^{1/4}
    const double t = 1000.0;
    CHECK(std::sqrt(theta(t, unit) / 12.0) / std::pow(3.0, 0.25) == doctest::Approx(5.0).epsilon(1e-14));

    const LargeTauChart g = large_tau_chart(generic_point({0.1, 0.05}, {0.0, 0.05}), 0, unit);
    // oscillation about the algebraic term decays like tau^{1/3} |tau|^{-...}; check the mean offset
    double worst = 0;
    for (double s = 1000.0; s < 1010.0; s += 0.5) worst = std::max(worst, std::abs(u_large(g, s) - 0.5 * std::cbrt(s)));
    CHECK(worst < 1.0);
    CHECK(worst > 1e-3);
}

TEST_CASE("small-tau chart") {
    const SmallTauChart c = small_tau_chart(identity_point(), 0, unit);
    CHECK(close(c.rho, 1.0 / 6.0, 1e-15));
    CHECK(close(c.chi1[0], std::exp(I * pi / 6.0) * std::exp(I * pi / 4.0), 1e-14));
    CHECK_FALSE(c.log_mode);

    // u / tau^{1/3} tends to a constant
    const cplx r4 = u_small(c, 1e-4) / std::cbrt(1e-4), r6 = u_small(c, 1e-6) / std::cbrt(1e-6);
    CHECK(std::abs(r4 - r6) < 1e-4);
    CHECK(std::abs(r6) > 0.1);

    const MonodromyPoint lm = from_branch(0.5 * I, Branch1{1.0, 2.0 * I - 1.0, 0.0, 1.0});
    CHECK(close(lm.s00, 2.0 * I, 1e-15));
    const SmallTauChart cl = small_tau_chart(lm, 0, make_params(1, 2.0));
    CHECK(cl.log_mode);
    // tau H - (a(a - i) + 1/4) / 2 -> 0 like 1 / ln tau
    const cplx a = lm.a;
    auto rest = [&](double t) { return std::abs(t * H_small(cl, t) - (a * (a - I) + 0.25) / 2.0); };
    CHECK(rest(1e-12) < rest(1e-4));

    const MonodromyPoint edge = from_branch(0.0, Branch1{1.0, -3.0 * I, 0.0, 1.0});
    CHECK(close(edge.s00, -2.0 * I, 1e-15));
    CHECK_THROWS_AS(small_tau_chart(edge, 0, unit), Error);
    CHECK_THROWS_AS(small_tau_chart(from_branch(0.0, Branch2{0.3, 1.0}), 0, unit), Error);
}

TEST_CASE("rho and -rho give identical evaluations") {
    for (const auto& p : sample_manifold(31, 10, 1)) {
        SmallTauChart c;
        try {
            c = small_tau_chart(p, 0, unit);
        } catch (const Error&) {
            continue;
        }
        const SmallTauChart m = small_tau_chart(p, 0, unit, -c.rho);
        for (double t : {1e-3, 0.05}) {
            CHECK(u_small(c, t) == u_small(m, t));
            CHECK(H_small(c, t) == H_small(m, t));
        }
    }
}

TEST_CASE("tau function") {
    const MonodromyPoint p = generic_point({0.1, 0.05}, {0.01, 0.02});
    const SmallTauChart c = small_tau_chart(p, 0, unit);
    const cplx a = p.a;
    CHECK(close(tau_function_exponent(c), 0.5 * (a * (a - I) + 0.25 + 8.0 * c.rho * c.rho), 1e-14));
    CHECK(close(tau_function_asymptotic(c, 0.01, 3.0), 3.0 * tau_function_asymptotic(c, 0.01, 1.0), 1e-12));

    const double t = 1e-3, h = 1e-7;
    const cplx dl = (std::log(tau_function_asymptotic(c, t + h, 1.0)) - std::log(tau_function_asymptotic(c, t - h, 1.0))) / (2 * h);
    CHECK(std::abs(dl - H_small(c, t)) < 1e-2 * std::abs(H_small(c, t)));
}

TEST_CASE("imaginary axis") {
    // eb < 0, eps2 = 1: Fhat_{-1,1} is the identity at a = 0
    const EquationParams p = make_params(1, -1.0, 1);
    const ImagEvaluation e = u_imag_detail(identity_point(), -1, p, 8.0, Regime::large);
    CHECK(e.prefactor == I);
    CHECK(close(e.kernel, 1.0, 1e-14));
    CHECK(e.value == e.prefactor * e.kernel);

    const MonodromyPoint q = generic_point({0.1, 0.05}, {0.01, 0.02});
    for (int e1 : {-1, 1}) {
        const MonodromyPoint hat = apply_Fhat(q, e1, unit.eps2);
        const SmallTauChart s = small_tau_chart_mapped(hat, q.a, 0, unit);
        const ImagEvaluation v = u_imag_detail(q, e1, unit, 0.01, Regime::small);
        CHECK(v.kernel == u_small(s, 0.01));
        CHECK(v.prefactor == double(e1) * I);
    }
}

TEST_CASE("connection identities between the real-axis charts") {
    SampleConstraints sc;
    sc.re_nu_max = 1.0 / 6.0;
    std::vector<MonodromyPoint> valid;
    for (const auto& p : sample_manifold(7, 200, 1, sc)) {
        std::array<double, 4> r;
        try {
            r = remark31_residuals(p);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::condition);
            continue;
        }
        valid.push_back(p);
        for (double x : r) CHECK(x < 1e-10);
    }
    REQUIRE(valid.size() > 10);

    const MonodromyPoint& p = valid.front();
    const LargeTauChart c0 = large_tau_chart(p, 0, unit), cp = large_tau_chart(p, 1, unit),
                        cm = large_tau_chart(p, -1, unit);
    auto g = [](const LargeTauChart& c) { return c.mapped.g11 * c.mapped.g22; };
    const auto base = remark31_identities(p.a, c0.omega, g(c0), cp.omega, g(cp), cm.omega, g(cm));
    const auto bumped = remark31_identities(p.a, c0.omega + 1e-3, g(c0), cp.omega, g(cp), cm.omega, g(cm));
    for (double x : base) CHECK(x < 1e-10);
    CHECK(*std::max_element(bumped.begin(), bumped.end()) > 1e-4);
    CHECK(*std::max_element(bumped.begin(), bumped.end()) < 1e-1);
}

TEST_CASE("fit recovers synthetic data") {
    const LargeTauChart c = large_tau_chart(generic_point({0.1, 0.05}, {0.02, 0.03}), 0, unit);
    FitOptions o;
    o.nuisance = false;
    const FitResult f = fit_large_tau(synthetic(c, 200.0, 400.0, 2000), unit, o);
    CHECK(close(f.nu_plus_1, c.nu_plus_1, 1e-8));
    CHECK(z_distance(f.z, f.nu_plus_1, c.z, c.nu_plus_1) < 1e-8);
    CHECK_FALSE(f.special);

    const FitResult fn = fit_large_tau(synthetic(c, 200.0, 400.0, 2000), unit);
    CHECK(close(fn.nu_plus_1, c.nu_plus_1, 1e-6));

    const LargeTauChart alg = large_tau_chart(identity_point(), 0, unit);
    const FitResult fa = fit_large_tau(synthetic(alg, 200.0, 400.0, 500), unit);
    CHECK(fa.special);
    CHECK(fa.amplitude < 1e-10);

    FitOptions early;
    early.window_lo = 1.0;
    CHECK_THROWS_AS(fit_large_tau(synthetic(c, 1.0, 400.0, 500), unit, early), Error);
}

TEST_CASE("connection: algebraic point") {
    const ConnectionReport r = verify_connection(identity_point(), unit, 1e-6, 100.0);
    CHECK(r.special);
    CHECK(r.fitted.amplitude < 1e-6);
    CHECK(r.leading_coefficient_error < 1e-6);
    CHECK_THROWS_AS(verify_connection(identity_point(), unit, 1.0, 0.5), Error);
}

TEST_CASE("connection: generic point") {
    const MonodromyPoint p = generic_point({0.1, 0.05}, {0.0, 0.05});
    ConnectionOptions o;
    o.tau1_list = {100.0, 200.0};
    const ConnectionReport r = verify_connection(p, unit, 1e-3, 200.0, o);
    CHECK_FALSE(r.special);
    CHECK(r.err_nu < 2e-2);
    CHECK(r.err_z < 1e-1);
    CHECK(r.table.size() >= 2);

    try {
        verify_connection(generic_point(0.1, 0.4), unit, 1e-3, 100.0);
        FAIL("expected a condition error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::condition);
    }
}
