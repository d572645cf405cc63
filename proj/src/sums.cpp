#include "twistlab/sums.hpp"

#include "twistlab/bessel.hpp"
#include "twistlab/quadrature.hpp"
#include "twistlab/reduce.hpp"

#include <cmath>

namespace twistlab {

namespace {

// integer window [ceil(X), ceil(2X)) covering supp V(./X) = [X, 2X]
std::pair<u64, u64> support_range(double X) {
    u64 lo = u64(std::ceil(X));
    u64 hi = u64(std::ceil(2.0 * X));
    if (lo < 1) lo = 1;
    if (hi < lo) hi = lo;
    return {lo, hi};
}

} // namespace

cplx twisted_sum(std::span<const double> lambda, const TraceFunction& K,
                 const SmoothWindow& V, double X) {
    auto [lo, hi] = support_range(X);
    if (hi > lambda.size())
        fail(ErrorCode::CoefficientRangeExceeded,
             "twisted_sum: coefficient table covers n < " + std::to_string(lambda.size()) +
                 ", need " + std::to_string(hi));
    const u64 q = K.modulus();
    return pairwise_sum<cplx>(hi - lo, [&](std::size_t i) {
        u64 n = lo + i;
        return lambda[n] * K.values()[n % q] * V(double(n) / X);
    });
}

RsTwistedSum rs_twisted_sum(const GL3CoefficientTable& g3, const GL2CoefficientTable& g2,
                            const TraceFunction& K, const SmoothWindow& V, double X,
                            u64 r_limit) {
    auto [lo, hi] = support_range(X);
    if (hi == lo) return {cplx(0, 0), 2};
    if (hi - 1 > g3.length || hi - 1 > g2.length)
        fail(ErrorCode::CoefficientRangeExceeded, "rs_twisted_sum: tables too short");
    const u64 q = K.modulus();
    u64 rmax = g3.r_max();
    if (r_limit > 0) rmax = std::min(rmax, r_limit);

    // fixed tree: per-r pairwise sums combined by a pairwise pass over r
    return {pairwise_sum<cplx>(rmax, [&](std::size_t ri) {
                const u64 r = ri + 1;
                const u64 r2 = r * r;
                // n r^2 in [lo, hi)
                u64 nlo = (lo + r2 - 1) / r2, nhi = (hi + r2 - 1) / r2;
                if (nlo < 1) nlo = 1;
                if (nhi < nlo) return cplx(0, 0);
                return pairwise_sum<cplx>(nhi - nlo, [&](std::size_t j) {
                    u64 n = nlo + j;
                    u64 nr2 = n * r2;
                    if (nr2 < lo || nr2 >= hi) return cplx(0, 0);
                    return g3.at(n, r) * g2.lambda[n] * K.values()[nr2 % q] *
                           cplx(V(double(nr2) / X), 0.0);
                });
            }),
            2};
}

cplx ap_sum(std::span<const double> lambda, u64 a, u64 q, const SmoothWindow& V, double X,
            bool require_primitive) {
    if (q == 0) fail(ErrorCode::InvalidParams, "ap_sum: q >= 1 required");
    if (require_primitive && std::gcd(a % q, q) != 1)
        fail(ErrorCode::NonPrimitiveClass, "ap_sum: gcd(a,q) != 1");
    auto [lo, hi] = support_range(X);
    if (hi > lambda.size())
        fail(ErrorCode::CoefficientRangeExceeded, "ap_sum: coefficient table too short");
    // first n >= lo with n == a (mod q)
    u64 first = lo + (a % q + q - lo % q) % q;
    if (first >= hi) return cplx(0, 0);
    u64 count = (hi - 1 - first) / q + 1;
    return pairwise_sum<cplx>(count, [&](std::size_t i) {
        u64 n = first + i * q;
        return cplx(lambda[n] * V(double(n) / X), 0.0);
    });
}

TraceFunction hyper_kloosterman_crt(int d, const FactoredModulus& m) {
    TraceFunction k0 = hyper_kloosterman(d, m.q0);
    TraceFunction k1 = hyper_kloosterman(d, m.q1);
    u64 t0 = pow_mod(m.inv_q1_mod_q0, u64(d), m.q0);
    u64 t1 = pow_mod(m.inv_q0_mod_q1, u64(d), m.q1);
    std::vector<cplx> v0(m.q0), v1(m.q1);
    for (u64 x = 0; x < m.q0; ++x) v0[x] = k0.values()[mul_mod(t0, x, m.q0)];
    for (u64 x = 0; x < m.q1; ++x) v1[x] = k1.values()[mul_mod(t1, x, m.q1)];
    TraceFunction tw0(m.q0, std::move(v0), "Kl_" + std::to_string(d) + " twist mod " + std::to_string(m.q0),
                      double(d));
    TraceFunction tw1(m.q1, std::move(v1), "Kl_" + std::to_string(d) + " twist mod " + std::to_string(m.q1),
                      double(d));
    return crt_product(tw0, tw1);
}

cplx dual_ap_sum(std::span<const double> lambda, u64 a, const FactoredModulus& m, int d,
                 const std::function<double(double)>& W, double X) {
    if (std::gcd(a % m.q, m.q) != 1)
        fail(ErrorCode::NonPrimitiveClass, "dual_ap_sum: gcd(a,q) != 1");
    if (d < 1) fail(ErrorCode::DegreeZero, "dual_ap_sum: degree >= 1 required");
    TraceFunction kl = hyper_kloosterman_crt(d, m);
    const double qd = std::pow(double(m.q), double(d));
    const double prefactor = X / std::pow(double(m.q), (d + 1) / 2.0);
    const u64 n_max = lambda.size() > 1 ? lambda.size() - 1 : 0;
    // the coefficient sequences here are real, so conj(lambda) = lambda
    cplx acc = pairwise_sum<cplx>(n_max, [&](std::size_t i) {
        u64 n = i + 1;
        return lambda[n] * kl.values()[u64(u128(a) * n % m.q)] * W(double(n) * X / qd);
    });
    return prefactor * acc;
}

cplx trivial_delta(i64 n, i64 r, u64 p, u64 q0) {
    if (p == q0 || !is_prime(p) || !is_prime(q0))
        fail(ErrorCode::InvalidParams, "trivial_delta: p, q0 must be distinct primes");
    i64 diff = n - r;
    auto ramanujan_prime = [&](u64 pr) -> i64 {
        return (diff % i64(pr) == 0) ? i64(pr) - 1 : -1;
    };
    // c in {1, p, q0, p q0}; the c = p q0 sum is multiplicative in the two
    // prime parts.
    i64 total = 1 + ramanujan_prime(p) + ramanujan_prime(q0) +
                ramanujan_prime(p) * ramanujan_prime(q0);
    return cplx(double(total) / (double(p) * double(q0)), 0.0);
}

namespace {

// Vhat(xi) = int_1^2 V(x) e(-xi x) dx
cplx window_fourier(const SmoothWindow& V, double xi, double tol = 1e-10) {
    const double two_pi = 6.283185307179586476925286766559;
    return integrate(
        [&](double x) {
            double ang = -two_pi * xi * x;
            return V(x) * cplx(std::cos(ang), std::sin(ang));
        },
        1.0, 2.0, tol);
}

} // namespace

IdentityCheck poisson_check(const TraceFunction& K, const SmoothWindow& V, double X, u64 M) {
    if (M == 0 || M % K.modulus() != 0)
        fail(ErrorCode::InvalidParams, "poisson_check: M must be a multiple of the period of K");

    auto [lo, hi] = support_range(X);
    const u64 q = K.modulus();
    cplx lhs = pairwise_sum<cplx>(hi - lo, [&](std::size_t i) {
        u64 n = lo + i;
        return K.values()[n % q] * V(double(n) / X);
    });

    // complete sums S(r) = sum_{beta mod M} K(beta) e(r beta / M) = sqrt(M) * FT(K_M)(r)
    TraceFunction KM = K;
    if (M != q) {
        std::vector<cplx> ext(M);
        for (u64 b = 0; b < M; ++b) ext[b] = K.values()[b % q];
        KM = TraceFunction(M, std::move(ext), K.label() + " ext");
    }
    TraceFunction hat = fourier_transform(KM);
    const double sqrtM = std::sqrt(double(M));

    const double supK = K.sup_norm();
    const double Z = V.z();
    const double two_pi = 6.283185307179586476925286766559;
    // |Vhat(xi)| <= int|V^(j)| / (2 pi xi)^j <= c_j Z^j / (2 pi xi)^j for
    // every certified j, so the dual tail beyond R is at most
    //   X supK * min_j 2 c_j Z^j (M/(2 pi X))^j (R^{1-j}/(j-1) + R^{-j}).
    auto tail_bound = [&](u64 R) {
        double best = 1e300;
        for (int j = 2; j <= V.derivative_cap(); ++j) {
            double cj = V.derivative_bound_constant(j);
            double per = cj * std::pow(Z * double(M) / (two_pi * X), double(j));
            double tail_sum = std::pow(double(R), 1.0 - j) / (j - 1.0) + std::pow(double(R), -double(j));
            best = std::min(best, X * supK * 2.0 * per * tail_sum);
        }
        return best;
    };

    u64 R = u64(std::ceil(40.0 * double(M) * std::max(Z, 1.0) / X));
    if (R < 1) R = 1;
    const double tol = 1e-9;
    while (tail_bound(R) > tol) {
        R *= 2;
        if (R > 1000000)
            fail(ErrorCode::QuadratureFailure, "poisson_check: tail bound does not converge");
    }

    cplx rhs(0, 0);
    for (i64 r = -i64(R); r <= i64(R); ++r) {
        u64 rm = u64(((r % i64(M)) + i64(M)) % i64(M));
        cplx S = sqrtM * hat.values()[rm];
        if (std::abs(S) < 1e-15 * sqrtM * (supK + 1.0)) continue;
        rhs += S * window_fourier(V, double(r) * X / double(M), 1e-12);
    }
    rhs *= X / double(M);

    return {lhs, rhs, std::abs(lhs - rhs)};
}

IdentityCheck voronoi_check(const GL2CoefficientTable& f, u64 a, u64 c,
                            const SmoothWindow& W, double X) {
    if (c == 0 || std::gcd(a % c, c) != 1)
        fail(ErrorCode::InvalidParams, "voronoi_check: gcd(a,c) = 1 required");
    const int k = f.weight;

    auto [lo, hi] = support_range(X);
    if (hi > f.lambda.size())
        fail(ErrorCode::CoefficientRangeExceeded, "voronoi_check: coefficient table too short");
    cplx lhs = pairwise_sum<cplx>(hi - lo, [&](std::size_t i) {
        u64 n = lo + i;
        return f.lambda[n] * e_q(u64(u128(a) * n % c), c) * W(double(n) / X);
    });

    // Wtilde(y) = 2 pi i^k int_1^2 W(x) J_{k-1}(4 pi sqrt(x y)) dx; i^k = +-1
    // for even k.
    const double two_pi = 6.283185307179586476925286766559;
    const double ik = (k % 4 == 0) ? 1.0 : -1.0;
    auto wtilde = [&](double y) {
        double v = integrate_real(
            [&](double x) { return W(x) * bessel_j(k - 1, 2.0 * two_pi * std::sqrt(x * y)); },
            1.0, 2.0, 1e-14, 100000);
        return two_pi * ik * v;
    };

    const u64 abar = (c == 1) ? 0 : mod_inverse(a % c, c);
    cplx rhs(0, 0);
    double peak = 0.0;
    int below = 0;
    bool converged = false;
    for (u64 n = 1; n < f.lambda.size(); ++n) {
        double wt = wtilde(double(n) * X / (double(c) * double(c)));
        peak = std::max(peak, std::abs(wt));
        u64 idx = u64(u128(abar) * n % c);
        rhs += f.lambda[n] * e_q(idx == 0 ? 0 : c - idx, c) * wt; // e(-abar n / c)
        // stop once the transform is dead: below 1e-12 of its peak, floored
        // at the quadrature noise level
        if (std::abs(wt) < std::max(1e-12 * peak, 5e-14)) {
            if (++below >= 3 && n >= 8) { converged = true; break; }
        } else {
            below = 0;
        }
    }
    if (!converged)
        fail(ErrorCode::TruncationNotConverged,
             "voronoi_check: dual sum not converged within the coefficient table");
    rhs *= X / double(c);

    double denom = std::max(std::abs(lhs), std::abs(rhs));
    double rel = denom == 0.0 ? 0.0 : std::abs(lhs - rhs) / denom;
    return {lhs, rhs, rel};
}

double bound_thm1(double X, double Z, double q0, double q1, double khat1) {
    const double q = q0 * q1;
    return khat1 * (std::sqrt(Z) * std::sqrt(X) * std::sqrt(q0) +
                    Z * std::sqrt(X) * std::sqrt(q) / std::pow(q0, 0.25) +
                    Z * std::sqrt(q) * std::pow(q0, 0.25));
}

double bound_thm2(double X, double Z, double q0, double q1) {
    const double q = q0 * q1;
    if (X < Z * Z * Z * Z * q * q * std::sqrt(q0))
        fail(ErrorCode::RangeConstraintViolated, "bound_thm2: X >= Z^4 q^2 q0^{1/2} required");
    const Rational t = bound_constants::ramanujan_theta3();
    const Rational e1 = (Rational(2) - t) / (Rational(3) - Rational(2) * t); // 23/32
    const Rational e2 = (Rational(1) - t) / (Rational(3) - Rational(2) * t); // 9/32
    return Z * Z *
           (std::pow(X, 0.75) * std::pow(q0, 0.75) +
            std::pow(X, e1.value()) * std::pow(q * q * std::sqrt(q0), e2.value()) +
            X / std::pow(q0, 0.25) + std::pow(X, 0.75) * q / std::sqrt(q0));
}

double compute_R(double X, double Z, double q, double q0) {
    double denom = Z * Z * Z * Z * q * q * std::sqrt(q0);
    if (X < denom)
        fail(ErrorCode::RangeConstraintViolated, "compute_R: X >= Z^4 q^2 q0^{1/2} required");
    const Rational t = bound_constants::ramanujan_theta3();
    const Rational e = Rational(1) / (Rational(3) - Rational(2) * t); // 7/16
    return std::pow(X / denom, e.value());
}

ApBound ap_corollary_bound(double X, double q) {
    const Rational level = bound_constants::standard_level(6) + Rational(1, 364); // 15/52
    return {std::pow(X, 0.25) * std::pow(q, 1.6) + std::pow(q, 2.3),
            q <= std::pow(X, level.value())};
}

} // namespace twistlab
