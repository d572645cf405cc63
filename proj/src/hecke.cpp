#include "twistlab/hecke.hpp"

#include "twistlab/residue.hpp"

#include <cmath>
#include <thread>

namespace twistlab {

namespace {

// Pentagonal-number expansion of prod(1-x^n): exponent/sign pairs with
// exponent <= deg, including the constant term (0, +1).
std::vector<std::pair<u64, int>> pentagonal_terms(u64 deg) {
    std::vector<std::pair<u64, int>> terms;
    terms.emplace_back(0, +1);
    for (u64 k = 1;; ++k) {
        u64 e1 = k * (3 * k - 1) / 2;
        u64 e2 = k * (3 * k + 1) / 2;
        int s = (k % 2 == 1) ? -1 : +1;
        if (e1 > deg) break;
        terms.emplace_back(e1, s);
        if (e2 <= deg) terms.emplace_back(e2, s);
    }
    return terms;
}

// ---------------------------------------------------------------------
// tau via BigInt series: 24 successive multiplications by the sparse
// pentagonal factor.  Exact and fine up to N ~ 2*10^4.
// ---------------------------------------------------------------------
std::vector<BigInt> tau_series_bigint(u64 N) {
    const u64 deg = N - 1; // tau(n) = [x^(n-1)] prod(1-x^n)^24
    auto terms = pentagonal_terms(deg);
    std::vector<BigInt> acc(deg + 1);
    acc[0] = BigInt(1);
    std::vector<BigInt> out(deg + 1);
    for (int pass = 0; pass < 24; ++pass) {
        for (u64 n = 0; n <= deg; ++n) {
            BigInt v;
            for (const auto& [e, s] : terms) {
                if (e > n) break;
                if (s > 0) v += acc[n - e];
                else v -= acc[n - e];
            }
            out[n] = std::move(v);
        }
        acc.swap(out);
    }
    return acc;
}

// ---------------------------------------------------------------------
// tau via 128-bit wraparound arithmetic.  All arithmetic is carried out
// in Z/2^128; since the map Z -> Z/2^128 is a ring homomorphism, the
// final residues equal tau(n) mod 2^128 no matter what the intermediate
// passes did, and tau(n) itself fits in 126 bits for the admissible N
// (checked below via |tau(n)| <= d(n) n^{11/2}).
//
// The 24th power is taken as 8 multiplications by the sparse cube
//   prod(1-x^n)^3 = sum_k (-1)^k (2k+1) x^{k(k+1)/2}
// which has ~sqrt(2*deg) terms; each pass runs term-major inside
// n-chunks so both streams stay sequential.
// ---------------------------------------------------------------------
std::vector<i128> tau_series_i128(u64 N) {
    const u64 deg = N - 1;

    // admissibility: max_n d(n) * n^5.5 must stay below 2^125
    {
        std::vector<u32> d(N + 1, 0);
        for (u64 k = 1; k <= N; ++k)
            for (u64 m = k; m <= N; m += k) ++d[m];
        double worst = 0.0;
        for (u64 n = 1; n <= N; ++n)
            worst = std::max(worst, std::log2(double(d[n])) + 5.5 * std::log2(double(n)));
        if (worst >= 125.0)
            fail(ErrorCode::OutOfRange, "delta_coefficients: length too large for the 128-bit path");
    }

    std::vector<std::pair<u64, u64>> cube; // (exponent, |coeff|), sign = (-1)^k
    for (u64 k = 0; k * (k + 1) / 2 <= deg; ++k) cube.emplace_back(k * (k + 1) / 2, 2 * k + 1);

    std::vector<u128> acc(deg + 1, 0), out(deg + 1, 0);
    acc[0] = 1;

    unsigned nt = std::max(1u, thread_count());
    for (int pass = 0; pass < 8; ++pass) {
        auto work = [&](u64 lo, u64 hi) {
            std::fill(out.begin() + lo, out.begin() + hi, u128(0));
            for (u64 k = 0; k < cube.size(); ++k) {
                u64 e = cube[k].first;
                if (e >= hi) break;
                u128 c = cube[k].second;
                u64 start = std::max(lo, e);
                const u128* in = acc.data() + (start - e);
                u128* o = out.data() + start;
                u64 len = hi - start;
                if (k & 1) {
                    for (u64 i = 0; i < len; ++i) o[i] -= in[i] * c;
                } else {
                    for (u64 i = 0; i < len; ++i) o[i] += in[i] * c;
                }
            }
        };
        if (nt <= 1) {
            work(0, deg + 1);
        } else {
            std::vector<std::thread> pool;
            u64 per = (deg + nt) / nt;
            for (unsigned t = 0; t < nt; ++t) {
                u64 lo = t * per, hi = std::min<u64>(deg + 1, lo + per);
                if (lo >= hi) break;
                pool.emplace_back(work, lo, hi);
            }
            for (auto& th : pool) th.join();
        }
        acc.swap(out);
    }

    std::vector<i128> tau(deg + 1);
    for (u64 n = 0; n <= deg; ++n) tau[n] = i128(acc[n]);
    return tau;
}

// sigma_j(n) for n <= N, j in {3,5}; values fit u128 comfortably here.
std::vector<BigInt> eisenstein_series(int j, int scale, u64 deg) {
    std::vector<u128> sig(deg + 1, 0);
    for (u64 d = 1; d <= deg; ++d) {
        u128 dj = 1;
        for (int i = 0; i < j; ++i) dj *= d;
        for (u64 m = d; m <= deg; m += d) sig[m] += dj;
    }
    std::vector<BigInt> E(deg + 1);
    E[0] = BigInt(1);
    for (u64 n = 1; n <= deg; ++n) E[n] = BigInt(scale) * BigInt::from_i128(i128(sig[n]));
    return E;
}

// c[n] = sum_{i+j=n} A[i] B[j], degrees up to deg.
std::vector<BigInt> series_mul(const std::vector<BigInt>& A, const std::vector<BigInt>& B, u64 deg) {
    std::vector<BigInt> C(deg + 1);
    for (u64 i = 0; i <= deg && i < A.size(); ++i) {
        if (A[i].is_zero()) continue;
        for (u64 j = 0; i + j <= deg && j < B.size(); ++j) {
            if (B[j].is_zero()) continue;
            C[i + j] += A[i] * B[j];
        }
    }
    return C;
}

void fill_lambda(GL2CoefficientTable& T) {
    T.lambda.assign(T.length + 1, 0.0);
    const double half = (T.weight - 1) / 2.0;
    for (u64 n = 1; n <= T.length; ++n)
        T.lambda[n] = T.a[n].to_double() / std::pow(double(n), half);
}

// Exact Hecke verification: prime-power recursion and multiplicativity
// along the canonical factorization, for every index <= N.
void verify_hecke(const GL2CoefficientTable& T) {
    const u64 N = T.length;
    if (T.a[1] != BigInt(1))
        fail(ErrorCode::InvalidParams, "Hecke table: a(1) != 1");

    std::vector<u32> spf(N + 1, 0);
    for (u64 i = 2; i <= N; ++i) {
        if (spf[i] == 0)
            for (u64 m = i; m <= N; m += i)
                if (spf[m] == 0) spf[m] = u32(i);
    }

    BigInt pk1_cache;
    u64 pk1_for = 0;
    for (u64 n = 2; n <= N; ++n) {
        u64 p = spf[n];
        u64 pe = p, m = n / p;
        while (m % p == 0) { pe *= p; m /= p; }
        if (m > 1) {
            // a(pe * m) = a(pe) a(m), gcd(pe, m) = 1
            if (T.a[n] != T.a[pe] * T.a[m])
                fail(ErrorCode::InvalidParams,
                     "Hecke multiplicativity fails at n=" + std::to_string(n));
        } else if (pe != p) {
            // a(p^{j+1}) = a(p) a(p^j) - p^{k-1} a(p^{j-1})
            if (pk1_for != p) {
                pk1_cache = BigInt(1);
                for (int i = 0; i < T.weight - 1; ++i) pk1_cache = pk1_cache * BigInt(i64(p));
                pk1_for = p;
            }
            if (T.a[n] != T.a[p] * T.a[n / p] - pk1_cache * T.a[n / (p * p)])
                fail(ErrorCode::InvalidParams,
                     "Hecke prime-power recursion fails at n=" + std::to_string(n));
        }
    }
}

} // namespace

const BigInt& GL2CoefficientTable::coeff(u64 n) const {
    if (n == 0 || n > length) fail(ErrorCode::OutOfRange, "GL2 coefficient index out of range");
    return a[n];
}

double GL2CoefficientTable::lam(u64 n) const {
    if (n == 0 || n > length) fail(ErrorCode::OutOfRange, "GL2 coefficient index out of range");
    return lambda[n];
}

GL2CoefficientTable delta_coefficients(u64 N, EvalPath path) {
    if (N < 1) fail(ErrorCode::InvalidParams, "delta_coefficients: N >= 1 required");
    GL2CoefficientTable T;
    T.weight = 12;
    T.length = N;
    T.a.resize(N + 1);

    bool fast = (path == EvalPath::Fast) || (path == EvalPath::Auto && N > 20000);
    if (fast) {
        auto tau = tau_series_i128(N);
        for (u64 n = 1; n <= N; ++n) T.a[n] = BigInt::from_i128(tau[n - 1]);
    } else {
        auto tau = tau_series_bigint(N);
        for (u64 n = 1; n <= N; ++n) T.a[n] = std::move(tau[n - 1]);
    }
    verify_hecke(T);
    fill_lambda(T);
    return T;
}

GL2CoefficientTable eigenform_coefficients(int k, u64 N) {
    switch (k) {
        case 12: case 16: case 18: case 20: case 22: case 26: break;
        default:
            fail(ErrorCode::UnsupportedWeight,
                 "eigenform_coefficients: dim S_k != 1 for weight " + std::to_string(k));
    }
    if (k == 12) return delta_coefficients(N);

    // E_{k-12}: E4 for 16, E6 for 18, E4^2 for 20, E4 E6 for 22, E4^2 E6 for 26
    const u64 deg = N - 1;
    auto series = tau_series_bigint(N); // Delta / x
    if (k != 18) {
        auto E4 = eisenstein_series(3, 240, deg);
        series = series_mul(series, E4, deg);
        if (k == 20 || k == 26) series = series_mul(series, E4, deg);
    }
    if (k == 18 || k == 22 || k == 26) {
        auto E6 = eisenstein_series(5, -504, deg);
        series = series_mul(series, E6, deg);
    }

    GL2CoefficientTable T;
    T.weight = k;
    T.length = N;
    T.a.resize(N + 1);
    for (u64 n = 1; n <= N; ++n) T.a[n] = std::move(series[n - 1]);
    verify_hecke(T);
    fill_lambda(T);
    return T;
}

double sym_square_prime_power(double lambda_p, int a, int b) {
    // h_j for parameters (alpha^2, 1, alpha^-2): e1 = e2 = lambda^2 - 1, e3 = 1
    const double t = lambda_p * lambda_p - 1.0;
    const int top = a + b + 1;
    // h[-1] = h[-2] = 0 handled by offset storage
    std::vector<double> h(top + 3, 0.0);
    h[2] = 1.0; // h_0
    for (int j = 1; j <= top; ++j)
        h[j + 2] = t * h[j + 1] - t * h[j] + h[j - 1];
    auto H = [&](int j) { return h[j + 2]; };
    return H(a + b) * H(b) - H(a + b + 1) * H(b - 1);
}

double GL3CoefficientTable::at(u64 m, u64 r) const {
    if (m == 0 || r == 0 || r >= by_r.size() || m >= by_r[r].size())
        fail(ErrorCode::OutOfRange, "GL3 coefficient index out of range");
    return by_r[r][m];
}

GL3CoefficientTable sym_square_coefficients(const GL2CoefficientTable& src, u64 N) {
    if (src.length < N)
        fail(ErrorCode::InsufficientSource, "sym_square_coefficients: source table too short");

    std::vector<u32> spf(N + 1, 0);
    for (u64 i = 2; i <= N; ++i) {
        if (spf[i] == 0)
            for (u64 m = i; m <= N; m += i)
                if (spf[m] == 0) spf[m] = u32(i);
    }

    GL3CoefficientTable T;
    T.length = N;
    u64 rmax = 1;
    while ((rmax + 1) * (rmax + 1) <= N) ++rmax;
    T.by_r.resize(rmax + 1);

    for (u64 r = 1; r <= rmax; ++r) {
        u64 mmax = N / (r * r);
        auto& row = T.by_r[r];
        row.assign(mmax + 1, 0.0);
        for (u64 m = 1; m <= mmax; ++m) {
            double val = 1.0;
            u64 mm = m, rr = r;
            while (mm > 1 || rr > 1) {
                u64 p = mm > 1 ? spf[mm] : spf[rr];
                if (rr > 1 && spf[rr] < p) p = spf[rr];
                if (mm > 1 && rr > 1) p = std::min<u64>(spf[mm], spf[rr]);
                int am = 0, ar = 0;
                while (mm % p == 0) { mm /= p; ++am; }
                while (rr % p == 0) { rr /= p; ++ar; }
                val *= sym_square_prime_power(src.lambda[p], am, ar);
            }
            row[m] = val;
        }
    }
    return T;
}

u64 divisor_function(int j, u64 n) {
    if (j != 2 && j != 3) fail(ErrorCode::InvalidParams, "divisor_function: j must be 2 or 3");
    if (n == 0) fail(ErrorCode::InvalidParams, "divisor_function: n >= 1 required");
    u64 result = 1;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        u64 e = 0;
        while (n % p == 0) { n /= p; ++e; }
        result *= (j == 2) ? (e + 1) : (e + 1) * (e + 2) / 2;
    }
    if (n > 1) result *= (j == 2) ? 2 : 3;
    return result;
}

double rankin_selberg_coefficient(const GL3CoefficientTable& g3,
                                  const GL2CoefficientTable& g2, u64 n) {
    if (n == 0 || n > g3.length || n > g2.length)
        fail(ErrorCode::OutOfRange, "rankin_selberg_coefficient: n out of table range");
    double acc = 0.0;
    for (u64 r = 1; r * r <= n; ++r) {
        if (n % (r * r)) continue;
        acc += g3.at(n / (r * r), r) * g2.lambda[n / (r * r)];
    }
    return acc;
}

} // namespace twistlab
