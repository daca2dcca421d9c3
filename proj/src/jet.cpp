#include "dp3/jet.hpp"

#include <algorithm>

namespace dp3 {

Jet Jet::constant(std::size_t order, cplx tau0, cplx v) {
    Jet j(order, tau0);
    if (order) j.c_[0] = v;
    return j;
}

Jet Jet::variable(std::size_t order, cplx tau0) {
    Jet j = constant(order, tau0, tau0);
    if (order > 1) j.c_[1] = 1.0;
    return j;
}

Jet Jet::derivative() const {
    Jet d(c_.empty() ? 0 : c_.size() - 1, t0_);
    for (std::size_t k = 1; k < c_.size(); ++k) d.c_[k - 1] = double(k) * c_[k];
    return d;
}

Jet Jet::truncated(std::size_t order) const {
    Jet r(std::min(order, c_.size()), t0_);
    std::copy_n(c_.begin(), r.c_.size(), r.c_.begin());
    return r;
}

namespace {
std::size_t common(const Jet& x, const Jet& y) { return std::min(x.order(), y.order()); }
}  // namespace

Jet operator+(const Jet& x, const Jet& y) {
    Jet r(common(x, y), x.t0_);
    for (std::size_t k = 0; k < r.order(); ++k) r.c_[k] = x.c_[k] + y.c_[k];
    return r;
}

Jet operator-(const Jet& x, const Jet& y) {
    Jet r(common(x, y), x.t0_);
    for (std::size_t k = 0; k < r.order(); ++k) r.c_[k] = x.c_[k] - y.c_[k];
    return r;
}

Jet operator*(const Jet& x, const Jet& y) {
    Jet r(common(x, y), x.t0_);
    for (std::size_t k = 0; k < r.order(); ++k)
        for (std::size_t i = 0; i <= k; ++i) r.c_[k] += x.c_[i] * y.c_[k - i];
    return r;
}

Jet operator/(const Jet& x, const Jet& y) {
    if (y.order() == 0 || y.c_[0] == cplx{0.0}) fail(ErrorKind::singular, "division by a jet vanishing at its base point");
    Jet r(common(x, y), x.t0_);
    for (std::size_t k = 0; k < r.order(); ++k) {
        cplx s = x.c_[k];
        for (std::size_t i = 1; i <= k; ++i) s -= y.c_[i] * r.c_[k - i];
        r.c_[k] = s / y.c_[0];
    }
    return r;
}

Jet operator*(cplx s, const Jet& x) {
    Jet r = x;
    for (auto& v : r.c_) v *= s;
    return r;
}

Jet operator+(const Jet& x, cplx s) {
    Jet r = x;
    if (r.order()) r.c_[0] += s;
    return r;
}

}  // namespace dp3
