// residue.hpp -- exact modular arithmetic: 64-bit moduli with 128-bit
// intermediates, deterministic primality, CRT data for two-prime moduli,
// primitive roots, and tabulated roots of unity.
#pragma once

#include "twistlab/common.hpp"

#include <vector>

namespace twistlab {

inline u64 mul_mod(u64 a, u64 b, u64 m) { return u64(u128(a) * b % m); }

inline u64 add_mod(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    if (s < a || s >= m) s -= m;
    return s;
}

inline u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

u64 pow_mod(u64 base, u64 exp, u64 m);

// Deterministic Miller--Rabin, valid for all moduli below 2^64
// (witness set {2,3,5,7,11,13,17,19,23,29,31,37}).
bool is_prime(u64 n);

// b with a*b == 1 (mod q).  Throws NotInvertible when gcd(a,q) != 1.
u64 mod_inverse(u64 a, u64 q);

// Smallest generator of (Z/pZ)^x.  p must be prime; p=2 returns 1.
u64 primitive_root(u64 p);

// q = q0*q1 for two distinct primes, with the precomputed CRT inverses.
struct FactoredModulus {
    u64 q0 = 0;
    u64 q1 = 0;
    u64 q = 0;
    u64 inv_q0_mod_q1 = 0;
    u64 inv_q1_mod_q0 = 0;

    FactoredModulus(u64 q0_, u64 q1_);
};

// Residue mod q with given reductions mod q0 and q1.
u64 crt_combine(u64 r0, u64 r1, const FactoredModulus& m);

// e_q(x) = exp(2*pi*i*x/q) for x in [0,q).
struct RootTable {
    u64 q = 0;
    std::vector<cplx> roots;

    explicit RootTable(u64 q_);
    const cplx& operator()(u64 x) const { return roots[x % q]; }
};

} // namespace twistlab
