#pragma once

#include <optional>

#include "dp3/core.hpp"

namespace dp3 {

// Equation parameters (eps, b) and the sector label eps2 with eps*b = |eps*b| e^{i pi eps2}.
struct EquationParams {
    int eps = 1;
    double b = 1.0;
    int eps2 = 0;

    double eb() const { return eps * b; }
    int sign2() const { return eps2 == 0 ? 1 : -1; }  // (-1)^{eps2}
};

// For eps*b < 0 the sector defaults to +1.
EquationParams make_params(int eps, double b, std::optional<int> eps2 = std::nullopt);
void validate(const EquationParams& p);

}  // namespace dp3
