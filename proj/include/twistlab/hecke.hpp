// hecke.hpp -- exact coefficient sequences: level-1 holomorphic eigenform
// coefficients (integer, arbitrary precision), symmetric-square GL3
// coefficients via Schur polynomials of the Satake parameters, divisor
// functions, and the Rankin--Selberg convolution.
#pragma once

#include "twistlab/bigint.hpp"
#include "twistlab/common.hpp"
#include "twistlab/trace.hpp" // EvalPath

#include <vector>

namespace twistlab {

// a(n) exact, lambda(n) = a(n)/n^((k-1)/2).  a(1) = 1.  The Hecke
// relations (prime-power recursion and multiplicativity along the
// canonical factorization) are verified exactly at construction.
struct GL2CoefficientTable {
    int weight = 0;
    u64 length = 0;
    std::vector<BigInt> a;      // index 0 unused
    std::vector<double> lambda; // index 0 unused

    const BigInt& coeff(u64 n) const;
    double lam(u64 n) const;
};

// Ramanujan tau table: coefficients of x * prod (1-x^n)^24.
// Direct = BigInt series arithmetic; Fast = 128-bit wraparound arithmetic
// (exact: the final values fit in 126 bits by the Deligne bound, which is
// checked, and intermediate wraps cancel since reduction mod 2^128 is a
// ring homomorphism).  Auto switches at length 20000.
GL2CoefficientTable delta_coefficients(u64 N, EvalPath path = EvalPath::Auto);

// Unique normalized cuspform of weight k in {12,16,18,20,22,26}, built as
// Delta * E_{k-12} with exact Eisenstein factors (E8=E4^2 etc).
GL2CoefficientTable eigenform_coefficients(int k, u64 N);

// A(m,r) for m*r^2 <= N, Hecke-normalized, real.  Prime powers come from
// the Schur polynomial s_{(a+b,b,0)}(alpha^2,1,alpha^-2) where
// lambda_f(p) = alpha + 1/alpha, evaluated by the Jacobi--Trudi
// determinant in the complete homogeneous symmetric functions
// (h_j = t h_{j-1} - t h_{j-2} + h_{j-3} with t = lambda_f(p)^2 - 1):
//   A(p^a, p^b) = h_{a+b} h_b - h_{a+b+1} h_{b-1}.
struct GL3CoefficientTable {
    u64 length = 0;                         // covers m*r^2 <= length
    std::vector<std::vector<double>> by_r;  // by_r[r][m], m <= length/r^2

    double at(u64 m, u64 r) const;
    u64 r_max() const { return by_r.empty() ? 0 : by_r.size() - 1; }
};

GL3CoefficientTable sym_square_coefficients(const GL2CoefficientTable& src, u64 N);

// A(p^a, p^b) for a single prime, from lambda_f(p); exposed for tests and
// identity checks.
double sym_square_prime_power(double lambda_p, int a, int b);

// d_2 or d_3 by multiplicativity.
u64 divisor_function(int j, u64 n);

// lambda_pi(n) = sum over n = m r^2 of A(m,r) lambda_f(m).
double rankin_selberg_coefficient(const GL3CoefficientTable& g3,
                                  const GL2CoefficientTable& g2, u64 n);

} // namespace twistlab
