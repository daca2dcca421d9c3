#pragma once

#include "dp3/core.hpp"

namespace dp3 {

struct Mat2 {
    cplx m11{1.0}, m12{0.0}, m21{0.0}, m22{1.0};

    static Mat2 identity() { return {}; }
    static Mat2 diag(cplx d1, cplx d2) { return {d1, 0.0, 0.0, d2}; }
    static Mat2 lower(cplx s) { return {1.0, 0.0, s, 1.0}; }
    static Mat2 upper(cplx s) { return {1.0, s, 0.0, 1.0}; }
    static Mat2 sigma1() { return {0.0, 1.0, 1.0, 0.0}; }
    static Mat2 sigma3() { return {1.0, 0.0, 0.0, -1.0}; }
    // e^{x sigma_3}
    static Mat2 exp_sigma3(cplx x) { return diag(std::exp(x), std::exp(-x)); }

    cplx det() const { return m11 * m22 - m12 * m21; }
    Mat2 inverse() const;  // throws ErrorKind::singular when det = 0

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.m11 * y.m11 + x.m12 * y.m21, x.m11 * y.m12 + x.m12 * y.m22,
                x.m21 * y.m11 + x.m22 * y.m21, x.m21 * y.m12 + x.m22 * y.m22};
    }
    friend Mat2 operator*(cplx c, const Mat2& x) { return {c * x.m11, c * x.m12, c * x.m21, c * x.m22}; }
    friend Mat2 operator-(const Mat2& x, const Mat2& y) {
        return {x.m11 - y.m11, x.m12 - y.m12, x.m21 - y.m21, x.m22 - y.m22};
    }
    friend bool operator==(const Mat2&, const Mat2&) = default;
};

// Entrywise max-norm.
double max_norm(const Mat2& m);

}  // namespace dp3
