#include "twistlab/bessel.hpp"

#include "twistlab/quadrature.hpp"

#include <cmath>
#include <vector>

namespace twistlab {

double bessel_j_series(int nu, double x) {
    if (nu < 0) fail(ErrorCode::InvalidParams, "bessel_j: negative order");
    // J_nu(x) = sum_m (-1)^m (x/2)^{nu+2m} / (m! (m+nu)!).  The alternating
    // series cancels down ~11 digits near the switch point for nu ~ 11, so
    // the accumulation runs in quad precision (arithmetic only, no libm).
    const __float128 half = (__float128)(x) / 2;
    const __float128 h2 = half * half;
    __float128 term = 1;
    for (int i = 1; i <= nu; ++i) term *= half / i;
    __float128 sum = term;
    for (int m = 1; m < 400; ++m) {
        term *= -h2 / ((__float128)m * (m + nu));
        sum += term;
        double t = (double)term, s = (double)sum;
        if (std::abs(t) < 1e-28 * (std::abs(s) + 1e-300)) break;
    }
    return (double)sum;
}

double bessel_j_asymptotic(int nu, double x) {
    if (x <= 0.0) fail(ErrorCode::InvalidParams, "bessel_j_asymptotic: x must be positive");
    // J_nu(x) ~ sqrt(2/(pi x)) [ P cos(w) - Q sin(w) ],
    // w = x - nu*pi/2 - pi/4, with the standard Hankel coefficients
    // a_j = prod_{i<=j} (4 nu^2 - (2i-1)^2) / (j! 8^j); truncated at the
    // smallest term.
    const long double mu = 4.0L * nu * nu;
    const long double inv8x = 1.0L / (8.0L * (long double)x);
    // For large nu the term magnitudes first grow, then shrink to a global
    // minimum, then diverge; optimal truncation sums up to that minimum.
    std::vector<long double> terms;
    long double term = 1.0L;
    for (int j = 1; j <= 160; ++j) {
        term *= (mu - (long double)(2 * j - 1) * (2 * j - 1)) / (long double)j * inv8x;
        terms.push_back(term);
        long double mag = term < 0 ? -term : term;
        if (mag < 1e-24L || mag > 1e12L) break;
    }
    std::size_t cut = 0;
    for (std::size_t j = 1; j < terms.size(); ++j) {
        long double a0 = terms[cut] < 0 ? -terms[cut] : terms[cut];
        long double a1 = terms[j] < 0 ? -terms[j] : terms[j];
        if (a1 < a0) cut = j;
    }
    long double P = 1.0L, Q = 0.0L;
    for (std::size_t idx = 0; idx <= cut; ++idx) {
        switch ((idx + 1) % 4) {
            case 1: Q += terms[idx]; break;
            case 2: P -= terms[idx]; break;
            case 3: Q -= terms[idx]; break;
            case 0: P += terms[idx]; break;
        }
    }
    const long double w = (long double)x - nu * 1.57079632679489661923L - 0.78539816339744830962L;
    long double val = std::sqrt(2.0L / (3.14159265358979323846L * (long double)x)) *
                      (P * std::cos(w) - Q * std::sin(w));
    return (double)val;
}

double bessel_j_integral(int nu, double x) {
    const double pi = 3.14159265358979323846;
    double v = integrate_real(
        [nu, x](double t) { return std::cos(nu * t - x * std::sin(t)); }, 0.0, pi, 1e-12,
        200000);
    return v / pi;
}

double bessel_j(int nu, double x) {
    if (x < 0.0) {
        double v = bessel_j(nu, -x);
        return (nu % 2) ? -v : v;
    }
    return x <= BESSEL_SWITCH ? bessel_j_series(nu, x) : bessel_j_asymptotic(nu, x);
}

} // namespace twistlab
