#include <doctest.h>

#include "dp3/specfun.hpp"

using namespace dp3;

namespace {
bool close(cplx x, cplx y, double tol) { return std::abs(x - y) <= tol; }
}  // namespace

TEST_CASE("ln_gamma at simple points") {
    CHECK(close(ln_gamma(cplx{1.0}), 0.0, 1e-15));
    CHECK(close(ln_gamma(2.0), 0.0, 1e-15));
    CHECK(close(ln_gamma(0.5), 0.5723649429247001, 1e-14));
}

TEST_CASE("ln_gamma against mpmath loggamma") {
    // mpmath 30 digits, principal branch
    struct Row { cplx z, lg, psi; };
    const Row rows[] = {
        {{3, 4}, {-1.75662678460378411, 4.74266443803465793}, {1.55035981733341091, 1.01050220918604445}},
        {{0.5, 0.5}, {0.112387242809623113, -0.750729202122050745}, {-0.868107362645477314, 1.44065951997751459}},
        {{-2.5, 0.1}, {-0.103149244042819203, -9.31444426835983812}, {1.10369737777880841, 0.922699291458598904}},
        {{-0.3, -7}, {-11.6344247360512689, -5.32500091829510289}, {1.95157806454546921, -1.68477903917807658}},
        {{12, 0.5}, {17.4914485209033272, 1.22148798473371833}, {2.44360419396997477, 0.0434236735691411257}},
    };
    for (const auto& r : rows) {
        CAPTURE(r.z);
        CHECK(close(ln_gamma(r.z), r.lg, 1e-12 * std::max(1.0, std::abs(r.lg))));
        CHECK(close(digamma(r.z), r.psi, 1e-12));
    }
}

TEST_CASE("gamma values") {
    CHECK(close(gamma(cplx{1.0}), 1.0, 1e-15));
    CHECK(close(gamma(cplx{1.25}), 0.25 * gamma(cplx{0.25}), 1e-14));
    CHECK(std::abs(std::norm(gamma(I)) - pi / std::sinh(pi)) < 1e-14);
    CHECK(close(gamma({0.5, 0.5}), {0.818163999541747394, -0.763313828713982617}, 1e-14));
    CHECK(close(gamma(cplx{-1.5}), 2.36327180120735470, 1e-13));
}

TEST_CASE("digamma values") {
    CHECK(close(digamma(cplx{1.0}), -0.57721566490, 1e-10));
    CHECK(close(digamma(cplx{1.0}), -0.5772156649015329, 1e-15));
    CHECK(close(digamma(3.5) - digamma(2.5), 1.0 / 2.5, 1e-14));
    CHECK(close(digamma(0.5), digamma(cplx{1.0}) - 2.0 * std::log(2.0), 1e-14));
}

TEST_CASE("poles raise") {
    for (double z : {0.0, -1.0, -7.0}) {
        CHECK_THROWS_AS(ln_gamma(z), Error);
        CHECK_THROWS_AS(digamma(z), Error);
        try {
            gamma(cplx{z});
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::pole);
        }
    }
}

TEST_CASE("reflection and duplication on a grid") {
    double worst_ref = 0, worst_dup = 0;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
            const cplx z{-2.35 + 0.5 * i, -2.25 + 0.5 * j};
            const cplx ref = gamma(z) * gamma(1.0 - z) * sin_pi(z) / pi;
            worst_ref = std::max(worst_ref, std::abs(ref - 1.0));
            const cplx lhs = ln_gamma(z) + ln_gamma(z + 0.5);
            const cplx rhs = (1.0 - 2.0 * z) * std::log(2.0) + 0.5 * std::log(pi) + ln_gamma(2.0 * z);
            // equal modulo 2 pi i
            const cplx d = lhs - rhs;
            const double wrap = std::abs(d.imag() - 2 * pi * std::round(d.imag() / (2 * pi)));
            worst_dup = std::max({worst_dup, std::abs(d.real()), wrap});
        }
    CHECK(worst_ref < 1e-12);
    CHECK(worst_dup < 1e-12);
}

TEST_CASE("ln_gamma is continuous across the imaginary direction and conjugate symmetric") {
    for (double x : {-3.7, -0.4, 0.3, 5.0})
        for (double y : {0.1, 2.0, 30.0}) {
            const cplx z{x, y};
            CHECK(close(ln_gamma(std::conj(z)), std::conj(ln_gamma(z)), 1e-12 * std::max(1.0, std::abs(ln_gamma(z)))));
            CHECK(close(ln_gamma(z + 1.0) - ln_gamma(z), std::log(z), 1e-11));
        }
}
