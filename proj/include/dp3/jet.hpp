#pragma once

#include <cstddef>
#include <vector>

#include "dp3/core.hpp"

namespace dp3 {

// Truncated Taylor series sum c_k (tau - tau0)^k, k < order.
class Jet {
public:
    Jet() = default;
    Jet(std::size_t order, cplx tau0) : c_(order, cplx{0.0}), t0_(tau0) {}

    static Jet constant(std::size_t order, cplx tau0, cplx v);
    static Jet variable(std::size_t order, cplx tau0);  // tau itself

    std::size_t order() const { return c_.size(); }
    cplx tau0() const { return t0_; }
    cplx& operator[](std::size_t k) { return c_[k]; }
    cplx operator[](std::size_t k) const { return c_[k]; }

    cplx value() const { return c_.empty() ? cplx{0.0} : c_[0]; }
    cplx d1() const { return c_.size() > 1 ? c_[1] : cplx{0.0}; }
    cplx d2() const { return c_.size() > 2 ? 2.0 * c_[2] : cplx{0.0}; }

    Jet derivative() const;  // order drops by one
    Jet truncated(std::size_t order) const;

    friend Jet operator+(const Jet& x, const Jet& y);
    friend Jet operator-(const Jet& x, const Jet& y);
    friend Jet operator*(const Jet& x, const Jet& y);
    friend Jet operator/(const Jet& x, const Jet& y);
    friend Jet operator*(cplx s, const Jet& x);
    friend Jet operator+(const Jet& x, cplx s);

private:
    std::vector<cplx> c_;
    cplx t0_{};
};

}  // namespace dp3
