#pragma once

#include "dp3/core.hpp"

namespace dp3 {

// Log-gamma on the principal branch: the analytic continuation of ln Gamma
// from the positive real axis with the cut along the negative real axis.
// Throws ErrorKind::pole for z in {0, -1, -2, ...}.
cplx ln_gamma(cplx z);

// Call with a cplx argument: for a double, glibc's ::gamma (which is lgamma) wins overload resolution.
cplx gamma(cplx z);

// psi(z) = d/dz ln Gamma(z).
cplx digamma(cplx z);

// sin(pi z) with the real part reduced first.
cplx sin_pi(cplx z);
cplx cos_pi(cplx z);

}  // namespace dp3
