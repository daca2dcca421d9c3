#include "dp3/specfun.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace dp3 {
namespace {

// Godfrey's Lanczos coefficients, g = 607/128, n = 15.
constexpr double kG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4, .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,  -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4, .36899182659531622704e-5,
};

void check_pole(cplx z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real())) {
        std::ostringstream os;
        os << "gamma/digamma pole at z = " << z.real();
        fail(ErrorKind::pole, os.str());
    }
}

// Valid for Re z >= 1/2.
cplx ln_gamma_lanczos(cplx z) {
    const cplx zm = z - 1.0;
    cplx x = kLanczos[0];
    for (std::size_t k = 1; k < kLanczos.size(); ++k) x += kLanczos[k] / (zm + double(k));
    const cplx t = zm + kG + 0.5;
    return 0.5 * std::log(2.0 * pi) + (zm + 0.5) * std::log(t) - t + std::log(x);
}

cplx digamma_asymptotic(cplx z) {
    // Bernoulli tail, Re z >= 10.
    const cplx w = 1.0 / (z * z);
    const cplx tail =
        w * (1.0 / 12 - w * (1.0 / 120 - w * (1.0 / 252 - w * (1.0 / 240 - w * (1.0 / 132 - w * (691.0 / 32760 - w / 12.0))))));
    return std::log(z) - 0.5 / z - tail;
}

}  // namespace

cplx sin_pi(cplx z) {
    const double x = z.real() - 2.0 * std::round(0.5 * z.real());
    return std::sin(pi * cplx{x, z.imag()});
}

cplx cos_pi(cplx z) {
    const double x = z.real() - 2.0 * std::round(0.5 * z.real());
    return std::cos(pi * cplx{x, z.imag()});
}

cplx ln_gamma(cplx z) {
    check_pole(z);
    if (z.real() >= 0.5) return ln_gamma_lanczos(z);
    // Upward recurrence; a sum of principal logs stays on the analytic branch.
    const int n = int(std::ceil(0.5 - z.real()));
    cplx acc = 0.0;
    for (int k = 0; k < n; ++k) acc += std::log(z + double(k));
    return ln_gamma_lanczos(z + double(n)) - acc;
}

cplx gamma(cplx z) {
    check_pole(z);
    if (z.real() >= 0.5) return std::exp(ln_gamma_lanczos(z));
    return pi / (sin_pi(z) * std::exp(ln_gamma_lanczos(1.0 - z)));
}

cplx digamma(cplx z) {
    check_pole(z);
    if (z.real() < 0.5) {
        const cplx s = sin_pi(z);
        return digamma(1.0 - z) - pi * cos_pi(z) / s;
    }
    cplx acc = 0.0;
    while (z.real() < 10.0) {
        acc -= 1.0 / z;
        z += 1.0;
    }
    return acc + digamma_asymptotic(z);
}

}  // namespace dp3
