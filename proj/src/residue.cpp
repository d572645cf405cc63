#include "twistlab/residue.hpp"

#include <atomic>
#include <cmath>

namespace twistlab {

namespace {
std::atomic<unsigned> g_threads{1};
}

void set_thread_count(unsigned n) { g_threads.store(n == 0 ? 1 : n); }
unsigned thread_count() { return g_threads.load(); }

u64 pow_mod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 result = 1;
    base %= m;
    while (exp) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // Sufficient witness set for n < 2^64 (Sorenson--Webster).
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

u64 mod_inverse(u64 a, u64 q) {
    if (q == 1) return 0;
    i64 t = 0, new_t = 1;
    i64 r = i64(q), new_r = i64(a % q);
    while (new_r != 0) {
        i64 quot = r / new_r;
        i64 tmp = t - quot * new_t;
        t = new_t; new_t = tmp;
        tmp = r - quot * new_r;
        r = new_r; new_r = tmp;
    }
    if (r != 1)
        fail(ErrorCode::NotInvertible,
             "mod_inverse: gcd(" + std::to_string(a) + "," + std::to_string(q) + ") != 1");
    if (t < 0) t += i64(q);
    return u64(t);
}

u64 primitive_root(u64 p) {
    if (p == 2) return 1;
    u64 phi = p - 1;
    // prime factors of p-1 by trial division
    std::vector<u64> factors;
    u64 m = phi;
    for (u64 d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            factors.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) factors.push_back(m);

    for (u64 g = 2; g < p; ++g) {
        bool ok = true;
        for (u64 f : factors) {
            if (pow_mod(g, phi / f, p) == 1) { ok = false; break; }
        }
        if (ok) return g;
    }
    fail(ErrorCode::InvalidParams, "primitive_root: no generator found (input not prime?)");
}

FactoredModulus::FactoredModulus(u64 q0_, u64 q1_) : q0(q0_), q1(q1_) {
    if (q0 == q1) fail(ErrorCode::InvalidParams, "FactoredModulus: q0 == q1");
    if (!is_prime(q0) || !is_prime(q1))
        fail(ErrorCode::InvalidParams, "FactoredModulus: factors must be prime");
    u128 prod = u128(q0) * q1;
    if (prod > u128(~u64(0)))
        fail(ErrorCode::OutOfRange, "FactoredModulus: q0*q1 exceeds 64 bits");
    q = u64(prod);
    inv_q0_mod_q1 = mod_inverse(q0 % q1, q1);
    inv_q1_mod_q0 = mod_inverse(q1 % q0, q0);
}

u64 crt_combine(u64 r0, u64 r1, const FactoredModulus& m) {
    // r = r0*q1*inv(q1 mod q0) + r1*q0*inv(q0 mod q1)  (mod q)
    u128 a = u128(r0 % m.q0) * m.inv_q1_mod_q0 % m.q0 * m.q1;
    u128 b = u128(r1 % m.q1) * m.inv_q0_mod_q1 % m.q1 * m.q0;
    return u64((a + b) % m.q);
}

RootTable::RootTable(u64 q_) : q(q_) {
    if (q == 0) fail(ErrorCode::InvalidParams, "RootTable: q == 0");
    roots.resize(q);
    const double two_pi = 6.283185307179586476925286766559;
    for (u64 x = 0; x < q; ++x) {
        double t = two_pi * (double(x) / double(q));
        roots[x] = cplx(std::cos(t), std::sin(t));
    }
}

} // namespace twistlab
