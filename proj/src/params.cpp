#include "dp3/params.hpp"

#include <cmath>
#include <sstream>

namespace dp3 {

void validate(const EquationParams& p) {
    if (p.eps != 1 && p.eps != -1) fail(ErrorKind::validation, "eps must be +-1");
    if (!std::isfinite(p.b) || p.b == 0.0) fail(ErrorKind::validation, "b must be finite and nonzero");
    const bool neg = p.eb() < 0.0;
    if (!neg && p.eps2 != 0) fail(ErrorKind::validation, "eps*b > 0 requires eps2 = 0");
    if (neg && p.eps2 != 1 && p.eps2 != -1) fail(ErrorKind::validation, "eps*b < 0 requires eps2 = +-1");
}

EquationParams make_params(int eps, double b, std::optional<int> eps2) {
    EquationParams p{eps, b, 0};
    if (eps * b < 0.0) p.eps2 = eps2.value_or(1);
    else if (eps2) p.eps2 = *eps2;
    validate(p);
    return p;
}

}  // namespace dp3
