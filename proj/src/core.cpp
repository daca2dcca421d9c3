#include "dp3/core.hpp"
#include "dp3/mat2.hpp"

#include <algorithm>
#include <cmath>

namespace dp3 {

const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::validation: return "validation";
        case ErrorKind::condition: return "condition-violation";
        case ErrorKind::pole: return "pole";
        case ErrorKind::singular: return "singularity";
        case ErrorKind::integration: return "integration-failure";
        case ErrorKind::fit: return "fit-non-convergence";
        case ErrorKind::ladder: return "ladder-breakdown";
    }
    return "unknown";
}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

double cbrt_real(double x) { return std::cbrt(x); }

Mat2 Mat2::inverse() const {
    const cplx d = det();
    if (d == cplx{0.0}) fail(ErrorKind::singular, "2x2 matrix is not invertible");
    return {m22 / d, -m12 / d, -m21 / d, m11 / d};
}

double max_norm(const Mat2& m) {
    return std::max({std::abs(m.m11), std::abs(m.m12), std::abs(m.m21), std::abs(m.m22)});
}

}  // namespace dp3
