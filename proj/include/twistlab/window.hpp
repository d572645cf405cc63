// window.hpp -- the smooth test function V_Z: compactly supported in
// [1,2], flat equal to 1 on [1+1/Z, 2-1/Z], glued with the standard
// exp(-1/t) step.  Derivative growth is certified numerically: the j-th
// finite-difference derivative satisfies |V^(j)| <= c_j Z^j with c_j
// measured and recorded.
#pragma once

#include "twistlab/common.hpp"

#include <vector>

namespace twistlab {

// psi(t) = 0 for t<=0, 1 for t>=1, exp-glued in between (C-infinity).
double smooth_step(double t);

class SmoothWindow {
public:
    explicit SmoothWindow(double Z, int derivative_cap = 4);

    double z() const { return z_; }
    int derivative_cap() const { return cap_; }

    double operator()(double x) const;

    // j-th derivative by central finite differences (j <= derivative_cap).
    double derivative(int j, double x) const;

    // measured c_j = max_x |V^(j)(x)| / Z^j over a fixed scan grid;
    // computed once per window and cached.
    double derivative_bound_constant(int j) const;

private:
    double z_;
    int cap_;
    mutable std::vector<double> cj_; // cj_[j], NaN until measured
};

} // namespace twistlab
