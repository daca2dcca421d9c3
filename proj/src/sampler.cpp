#include "dp3/sampler.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace dp3 {

cplx nu_plus_1_of(const MonodromyPoint& pt) { return I / (2.0 * pi) * std::log(pt.g11 * pt.g22); }

namespace {

struct Draw {
    std::mt19937_64 rng;
    double uni(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
    cplx box(double r) { return {uni(-r, r), uni(-r, r)}; }
    cplx polar(double rlo, double rhi) { return std::polar(uni(rlo, rhi), uni(-pi, pi)); }
};

cplx draw_a(Draw& d, const SampleConstraints& c) {
    for (;;) {
        const cplx a = d.box(c.a_max);
        if (std::abs(a) <= c.a_max && std::abs(a.imag()) < c.im_a_max && std::abs(a.real()) <= c.re_a_max) return a;
    }
}

// Branch-1 point with prescribed nu+1 and rho: g11 g22 = e^{-2 pi i nu}, s00 = 2i cos(2 pi rho);
// the s00 relation is then a quadratic in g11 g12.
std::optional<MonodromyPoint> targeted(Draw& d, const SampleConstraints& c) {
    const double m = *c.abs_nu_max;
    const cplx n1 = d.box(m);
    if (std::abs(n1) > m) return std::nullopt;
    const double rr = c.re_rho_max ? std::min(*c.re_rho_max, 0.5) : 0.45;
    const cplx rho{d.uni(0.0, rr), d.uni(0.0, 0.3)};
    const cplx a = draw_a(d, c);
    const cplx pv = std::exp(-2.0 * pi * I * n1);
    const cplx g11 = d.polar(0.5, 1.5);
    const cplx s00 = 2.0 * I * std::cos(2.0 * pi * rho);
    const cplx B = -pv * (s00 - I * std::exp(-pi * a) / pv), C = -pv * (pv - 1.0);
    const cplx x = (-B + std::sqrt(B * B - 4.0 * C)) / 2.0;
    if (std::abs(x) < 1e-3) return std::nullopt;
    const cplx g12 = x / g11, g21 = (pv - 1.0) / g12, g22 = pv / g11;
    return from_branch(a, Branch1{g11, g12, g21, g22});
}

bool accept(const MonodromyPoint& pt, const SampleConstraints& c) {
    for (cplx x : {pt.s00, pt.s0inf, pt.s1inf, pt.g11, pt.g12, pt.g21, pt.g22})
        if (!(std::abs(x) <= c.entry_max)) return false;
    if (c.re_nu_max || c.abs_nu_max) {
        if (pt.g11 == cplx{0.0} || pt.g22 == cplx{0.0}) return false;
        const cplx n1 = nu_plus_1_of(pt);
        if (c.re_nu_max && !(std::abs(n1.real()) < *c.re_nu_max)) return false;
        if (c.abs_nu_max && !(std::abs(n1) <= *c.abs_nu_max)) return false;
    }
    if (c.re_rho_max) {
        const cplx r = rho_from(pt);
        if (!(std::abs(r.real()) < *c.re_rho_max) || std::abs(r) < 1e-8) return false;
    }
    return max_manifold_residual(pt) < 1e-12;
}

}  // namespace

std::vector<MonodromyPoint> sample_manifold(std::uint64_t seed, int count, int branch, const SampleConstraints& c) {
    if (count < 0) fail(ErrorKind::validation, "count must be >= 0");
    if (branch < 1 || branch > 3) fail(ErrorKind::validation, "branch must be 1, 2 or 3");
    if (!(c.a_max >= 0.0) || !(c.im_a_max > 0.0) || !(c.re_a_max >= 0.0)) fail(ErrorKind::validation, "bad bounds on a");
    if (c.abs_nu_max && branch != 1) fail(ErrorKind::validation, "a bound on |nu+1| needs branch 1");
    Draw d{std::mt19937_64(seed)};
    std::vector<MonodromyPoint> out;
    long attempts = 0;
    while (int(out.size()) < count) {
        if (++attempts > c.max_attempts) {
            std::ostringstream os;
            os << "sampler gave up after " << c.max_attempts << " attempts with " << out.size() << " of " << count
               << " points";
            fail(ErrorKind::validation, os.str());
        }
        std::optional<MonodromyPoint> pt;
        if (branch == 1 && c.abs_nu_max) {
            pt = targeted(d, c);
        } else if (branch == 1) {
            const cplx a = draw_a(d, c);
            const cplx g11 = d.polar(0.5, 2.0), g12 = d.box(1.0), g21 = d.box(1.0);
            pt = from_branch(a, Branch1{g11, g12, g21, (1.0 + g12 * g21) / g11});
        } else {
            const cplx a = draw_a(d, c);
            const cplx s00 = d.box(2.0), g = d.polar(0.5, 2.0);
            pt = branch == 2 ? from_branch(a, Branch2{s00, g}) : from_branch(a, Branch3{s00, g});
        }
        if (pt && accept(*pt, c)) out.push_back(*pt);
    }
    return out;
}

}  // namespace dp3
