#include "twistlab/window.hpp"

#include <cmath>
#include <limits>

namespace twistlab {

double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    double a = std::exp(-1.0 / t);
    double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

SmoothWindow::SmoothWindow(double Z, int derivative_cap) : z_(Z), cap_(derivative_cap) {
    if (Z < 1.0) fail(ErrorCode::InvalidParams, "SmoothWindow: Z >= 1 required");
    if (cap_ < 0) fail(ErrorCode::InvalidParams, "SmoothWindow: negative derivative cap");
    cj_.assign(cap_ + 1, std::numeric_limits<double>::quiet_NaN());
}

double SmoothWindow::operator()(double x) const {
    if (x <= 1.0 || x >= 2.0) return 0.0;
    return smooth_step(z_ * (x - 1.0)) * smooth_step(z_ * (2.0 - x));
}

double SmoothWindow::derivative(int j, double x) const {
    if (j < 0 || j > cap_)
        fail(ErrorCode::OutOfRange, "SmoothWindow: derivative order beyond cap");
    if (j == 0) return (*this)(x);
    // central difference: f^(j)(x) ~ h^-j sum_i (-1)^i C(j,i) f(x + (j/2-i)h)
    const double h = 1e-3 / z_;
    double acc = 0.0;
    double binom = 1.0;
    for (int i = 0; i <= j; ++i) {
        acc += ((i % 2) ? -binom : binom) * (*this)(x + (j / 2.0 - i) * h);
        binom = binom * (j - i) / (i + 1);
    }
    return acc / std::pow(h, j);
}

double SmoothWindow::derivative_bound_constant(int j) const {
    if (j < 0 || j > cap_)
        fail(ErrorCode::OutOfRange, "SmoothWindow: derivative order beyond cap");
    if (!std::isnan(cj_[j])) return cj_[j];
    const int grid = 4001;
    double worst = 0.0;
    for (int i = 0; i < grid; ++i) {
        double x = 0.99 + 1.02 * double(i) / double(grid - 1);
        worst = std::max(worst, std::abs(derivative(j, x)));
    }
    cj_[j] = worst / std::pow(z_, j);
    return cj_[j];
}

} // namespace twistlab
