// quadrature.hpp -- adaptive Gauss--Kronrod (G7,K15) integration.
// Panels are bisected while the K15-G7 discrepancy exceeds the local
// share of the absolute tolerance.
#pragma once

#include "twistlab/common.hpp"

#include <functional>

namespace twistlab {

struct QuadResult {
    cplx value;
    double error_estimate;
    int panels;
};

// Single (G7,K15) panel on [a,b].
QuadResult gk15_panel(const std::function<cplx(double)>& f, double a, double b);

// Adaptive refinement to absolute tolerance; throws QuadratureFailure when
// the panel budget is exhausted before the tolerance is met.
cplx integrate(const std::function<cplx(double)>& f, double a, double b,
               double abs_tol = 1e-10, int max_panels = 20000);

double integrate_real(const std::function<double(double)>& f, double a, double b,
                      double abs_tol = 1e-10, int max_panels = 20000);

} // namespace twistlab
