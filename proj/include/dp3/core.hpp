#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dp3 {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

enum class ErrorKind {
    validation,     // malformed input, bad flags, bad free parameters
    condition,      // a theorem's hypotheses do not hold for the data
    pole,           // special function evaluated on its pole set
    singular,       // u = 0, tau = 0 or a non-invertible factor
    integration,    // step underflow, blow-up on the ray
    fit,            // least squares did not converge
    ladder,         // Backlund ladder hit u_n = 0
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

// Real cube root with the convention x^{1/3} = -|x|^{1/3} for x < 0.
double cbrt_real(double x);

}  // namespace dp3
