// bessel.hpp -- J_nu for integer nu: ascending series below the switch
// point, large-argument asymptotic expansion above it.  The two regimes
// overlap around the switch point and are tested to agree there and to
// match quadrature of the integral representation.
#pragma once

#include "twistlab/common.hpp"

namespace twistlab {

inline constexpr double BESSEL_SWITCH = 20.0;

double bessel_j_series(int nu, double x);
double bessel_j_asymptotic(int nu, double x);

// (1/pi) int_0^pi cos(nu t - x sin t) dt, by adaptive quadrature; the
// slow reference the two fast regimes are validated against.
double bessel_j_integral(int nu, double x);

// series for x <= BESSEL_SWITCH, asymptotic beyond.
double bessel_j(int nu, double x);

} // namespace twistlab
