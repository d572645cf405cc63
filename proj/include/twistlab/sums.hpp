// sums.hpp -- the twisted sums, arithmetic-progression sums and duals,
// the trivial delta identity, Poisson and Voronoi identity checks, and
// evaluators for the bound formulas.
#pragma once

#include "twistlab/common.hpp"
#include "twistlab/hecke.hpp"
#include "twistlab/rational.hpp"
#include "twistlab/trace.hpp"
#include "twistlab/window.hpp"

#include <functional>
#include <span>

namespace twistlab {

// sum over X <= n < 2X of lambda[n] K(n) V(n/X).
// lambda is 1-indexed (lambda[0] ignored) and must cover n < 2X.
cplx twisted_sum(std::span<const double> lambda, const TraceFunction& K,
                 const SmoothWindow& V, double X);

// Double sum over n,r >= 1 with n r^2 in [X, 2X) of
// A(n,r) lambda_f(n) K(n r^2) V(n r^2 / X).  `value` covers r >= 1 only;
// the sum over r != 0 of the original coefficients (which are even in r)
// is symmetric_multiplier * value.
struct RsTwistedSum {
    cplx value;
    int symmetric_multiplier = 2;
    cplx symmetric_value() const { return double(symmetric_multiplier) * value; }
};
RsTwistedSum rs_twisted_sum(const GL3CoefficientTable& g3, const GL2CoefficientTable& g2,
                            const TraceFunction& K, const SmoothWindow& V, double X,
                            u64 r_limit = 0 /* 0 = all */);

// sum over n == a (mod q), X <= n < 2X of lambda[n] V(n/X).
// Requires gcd(a,q)=1 unless require_primitive is cleared (the partition
// identity test sums over every class).
cplx ap_sum(std::span<const double> lambda, u64 a, u64 q, const SmoothWindow& V,
            double X, bool require_primitive = true);

// (X / q^{(d+1)/2}) sum_n conj(lambda[n]) Kl_d(a n; q) W(n X / q^d) with
// q = q0 q1 and Kl_d mod q assembled from the prime-modulus tables via
//   Kl_d(n; q0 q1) = Kl_d(q1bar^d n; q0) Kl_d(q0bar^d n; q1).
// W is a caller-supplied decaying weight; this evaluator is for magnitude
// studies (the exact archimedean transform of V is not specified here).
cplx dual_ap_sum(std::span<const double> lambda, u64 a, const FactoredModulus& m, int d,
                 const std::function<double(double)>& W, double X);

// Trace table of Kl_d mod q0*q1 built through the CRT twist above.
TraceFunction hyper_kloosterman_crt(int d, const FactoredModulus& m);

// (p q0)^{-1} sum_{c | p q0} sum*_{alpha mod c} e(alpha (n-r)/c), exactly,
// via the Ramanujan-sum structure of the four divisors.  1 iff pq0 | n-r.
cplx trivial_delta(i64 n, i64 r, u64 p, u64 q0);

struct IdentityCheck {
    cplx lhs;
    cplx rhs;
    double diff; // absolute for Poisson, relative for Voronoi
};

// sum_r K(r) V(r/X)  vs  (X/M) sum_r (sum_beta K(beta) e(r beta/M)) Vhat(rX/M).
// M must be a multiple of the period of K.  The dual sum is truncated at
// |r| <= 40 M max(Z,1)/X extended until the integration-by-parts tail
// bound clears the tolerance.
IdentityCheck poisson_check(const TraceFunction& K, const SmoothWindow& V, double X, u64 M);

// sum lambda(n) e(an/c) W(n/X)  vs
// (X/c) sum lambda(n) e(-abar n/c) Wtilde(n X/c^2),
// Wtilde(y) = 2 pi i^k int W(x) J_{k-1}(4 pi sqrt(xy)) dx; holomorphic
// weight-k Voronoi with the classical constant.  The dual sum stops once
// |Wtilde| falls below 1e-12 of its running peak.
IdentityCheck voronoi_check(const GL2CoefficientTable& f, u64 a, u64 c,
                            const SmoothWindow& W, double X);

// khat1 ( Z^{1/2} X^{1/2} q0^{1/2} + Z X^{1/2} q^{1/2} q0^{-1/4} + Z q^{1/2} q0^{1/4} )
double bound_thm1(double X, double Z, double q0, double q1, double khat1);

// Z^2 ( X^{3/4} q0^{3/4} + X^{(2-t)/(3-2t)} (q^2 q0^{1/2})^{(1-t)/(3-2t)}
//       + X / q0^{1/4} + X^{3/4} q / q0^{1/2} ),  t = 5/14.
// Requires X >= Z^4 q^2 q0^{1/2}.
double bound_thm2(double X, double Z, double q0, double q1);

// R = (X / (Z^4 q^2 q0^{1/2}))^{1/(3-2t)};  requires the same constraint.
double compute_R(double X, double Z, double q, double q0);

struct ApBound {
    double bound;    // X^{1/4} q^{8/5} + q^{23/10}
    bool level_ok;   // q <= X^{15/52}
};
ApBound ap_corollary_bound(double X, double q);

} // namespace twistlab
