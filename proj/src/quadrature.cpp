#include "twistlab/quadrature.hpp"

#include <cmath>
#include <vector>

namespace twistlab {

namespace {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK dqk15 abscissae).
const double XGK[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
const double WGK[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
const double WG[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

} // namespace

QuadResult gk15_panel(const std::function<cplx(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    cplx fc = f(mid);
    cplx kron = WGK[7] * fc;
    cplx gauss = WG[3] * fc;
    for (int i = 0; i < 7; ++i) {
        cplx lo = f(mid - half * XGK[i]);
        cplx hi = f(mid + half * XGK[i]);
        kron += WGK[i] * (lo + hi);
        if (i % 2 == 1) gauss += WG[i / 2] * (lo + hi);
    }
    kron *= half;
    gauss *= half;
    return {kron, std::abs(kron - gauss), 1};
}

cplx integrate(const std::function<cplx(double)>& f, double a, double b,
               double abs_tol, int max_panels) {
    struct Panel { double a, b; cplx value; double err; };
    QuadResult first = gk15_panel(f, a, b);
    std::vector<Panel> panels{{a, b, first.value, first.error_estimate}};
    int used = 1;
    while (true) {
        double total_err = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            total_err += panels[i].err;
            if (panels[i].err > panels[worst].err) worst = i;
        }
        if (total_err <= abs_tol) break;
        if (used >= max_panels)
            fail(ErrorCode::QuadratureFailure,
                 "integrate: panel budget exhausted (err=" + std::to_string(total_err) + ")");
        Panel p = panels[worst];
        double m = 0.5 * (p.a + p.b);
        QuadResult l = gk15_panel(f, p.a, m);
        QuadResult r = gk15_panel(f, m, p.b);
        panels[worst] = {p.a, m, l.value, l.error_estimate};
        panels.push_back({m, p.b, r.value, r.error_estimate});
        ++used;
    }
    cplx acc(0, 0);
    for (const auto& p : panels) acc += p.value;
    return acc;
}

double integrate_real(const std::function<double(double)>& f, double a, double b,
                      double abs_tol, int max_panels) {
    return integrate([&](double x) { return cplx(f(x), 0.0); }, a, b, abs_tol, max_panels)
        .real();
}

} // namespace twistlab
