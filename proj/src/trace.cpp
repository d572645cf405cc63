#include "twistlab/trace.hpp"

#include "twistlab/fft.hpp"
#include "twistlab/reduce.hpp"

#include <cmath>
#include <numeric>

namespace twistlab {

namespace {
constexpr double TWO_PI = 6.283185307179586476925286766559;
} // namespace

cplx e_q(u64 x, u64 q) {
    double ang = TWO_PI * (double(x % q) / double(q));
    return cplx(std::cos(ang), std::sin(ang));
}

namespace {
cplx e_frac(u64 num, u64 den) { return e_q(num, den); }
} // namespace

TraceFunction::TraceFunction(u64 q, std::vector<cplx> values, std::string label,
                             std::optional<double> supnorm_hint)
    : q_(q), values_(std::move(values)), label_(std::move(label)),
      supnorm_hint_(supnorm_hint) {
    if (q_ == 0 || values_.size() != q_)
        fail(ErrorCode::InvalidParams,
             "TraceFunction: table must have exactly q entries");
    if (supnorm_hint_) {
        double m = sup_norm();
        if (m > *supnorm_hint_ + 1e-9)
            fail(ErrorCode::InvalidParams,
                 "TraceFunction '" + label_ + "': sup norm " + std::to_string(m) +
                     " exceeds hint " + std::to_string(*supnorm_hint_));
    }
}

TraceFunction::TraceFunction(const TraceFunction& o)
    : q_(o.q_), values_(o.values_), label_(o.label_), supnorm_hint_(o.supnorm_hint_) {
    fourier_supnorm_.store(o.fourier_supnorm_.load());
}

TraceFunction& TraceFunction::operator=(const TraceFunction& o) {
    if (this != &o) {
        q_ = o.q_;
        values_ = o.values_;
        label_ = o.label_;
        supnorm_hint_ = o.supnorm_hint_;
        fourier_supnorm_.store(o.fourier_supnorm_.load());
    }
    return *this;
}

double TraceFunction::sup_norm() const {
    double m = 0.0;
    for (const cplx& z : values_) m = std::max(m, std::abs(z));
    return m;
}

double TraceFunction::fourier_sup_norm() const {
    double cached = fourier_supnorm_.load();
    if (!std::isnan(cached)) return cached;
    TraceFunction hat = fourier_transform(*this);
    double m = hat.sup_norm();
    fourier_supnorm_.store(m);
    return m;
}

TraceFunction additive_char(u64 a, u64 q) {
    std::vector<cplx> v(q);
    for (u64 x = 0; x < q; ++x) v[x] = e_frac(u64(u128(a % q) * x % q), q);
    return TraceFunction(q, std::move(v), "e(" + std::to_string(a) + "x/" + std::to_string(q) + ")", 1.0);
}

TraceFunction dirichlet_char(u64 q, u64 j) {
    if (!is_prime(q)) fail(ErrorCode::InvalidParams, "dirichlet_char: modulus must be prime");
    if (j >= q - 1) fail(ErrorCode::InvalidParams, "dirichlet_char: index out of range");
    std::vector<cplx> v(q, cplx(0, 0));
    u64 g = primitive_root(q);
    u64 x = 1;
    for (u64 t = 0; t < q - 1; ++t) {
        v[x] = e_frac(u64(u128(j) * t % (q - 1)), q - 1);
        x = mul_mod(x, g, q);
    }
    return TraceFunction(q, std::move(v),
                         "chi_" + std::to_string(j) + " mod " + std::to_string(q), 1.0);
}

TraceFunction point_mass(u64 x0, u64 q) {
    std::vector<cplx> v(q, cplx(0, 0));
    v[x0 % q] = cplx(1, 0);
    return TraceFunction(q, std::move(v),
                         "delta_" + std::to_string(x0 % q) + " mod " + std::to_string(q), 1.0);
}

TraceFunction constant_one(u64 q) {
    std::vector<cplx> v(q, cplx(1, 0));
    return TraceFunction(q, std::move(v), "1 mod " + std::to_string(q), 1.0);
}

TraceFunction hyper_kloosterman(int d, u64 p, EvalPath path) {
    if (d == 0) fail(ErrorCode::DegreeZero, "hyper_kloosterman: degree must be >= 1");
    if (d < 0) fail(ErrorCode::InvalidParams, "hyper_kloosterman: negative degree");
    if (!is_prime(p)) fail(ErrorCode::InvalidParams, "hyper_kloosterman: modulus must be prime");

    std::vector<cplx> kl(p);
    for (u64 n = 0; n < p; ++n) kl[n] = e_frac(n, p);
    if (d == 1 || p == 2) {
        // For p=2 the unit group is trivial: the recursion multiplies the
        // whole table by e(1/2)/sqrt(2) = -1/sqrt(2) at each step.
        for (int step = 1; step < d; ++step)
            for (auto& z : kl) z *= -1.0 / std::sqrt(2.0);
        return TraceFunction(p, std::move(kl), "Kl_" + std::to_string(d) + " mod " + std::to_string(p),
                             double(d));
    }

    const u64 L = p - 1;
    const u64 g = primitive_root(p);
    // dlog coordinates: pw[t] = g^t, so table index of g^t is pw[t]
    std::vector<u64> pw(L);
    u64 x = 1;
    for (u64 t = 0; t < L; ++t) { pw[t] = x; x = mul_mod(x, g, p); }

    // B[t] = e(g^t / p): the additive-character factor in dlog coordinates
    std::vector<cplx> B(L);
    for (u64 t = 0; t < L; ++t) B[t] = e_frac(pw[t], p);

    bool use_fft = (path == EvalPath::Fast) || (path == EvalPath::Auto && p > 2048);
    const double inv_sqrt_p = 1.0 / std::sqrt(double(p));

    std::vector<cplx> A(L);
    for (u64 t = 0; t < L; ++t) A[t] = kl[pw[t]];
    cplx at_zero = kl[0];

    for (int step = 1; step < d; ++step) {
        // Kl_{step+1}(g^s) = p^{-1/2} sum_t Kl_step(g^{s-t}) e(g^t/p):
        // a length-(p-1) cyclic convolution of A with B.
        std::vector<cplx> C = use_fft ? cyclic_convolution_fft(A, B)
                                      : cyclic_convolution_direct(A, B);
        for (auto& z : C) z *= inv_sqrt_p;
        A.swap(C);
        // Kl_{step+1}(0) = p^{-1/2} Kl_step(0) * sum_y e(y/p) = -p^{-1/2} Kl_step(0)
        at_zero *= -inv_sqrt_p;
    }

    for (u64 t = 0; t < L; ++t) kl[pw[t]] = A[t];
    kl[0] = at_zero;
    return TraceFunction(p, std::move(kl), "Kl_" + std::to_string(d) + " mod " + std::to_string(p),
                         double(d));
}

cplx classical_kloosterman(i64 a, i64 b, u64 c) {
    if (c == 0) fail(ErrorCode::InvalidParams, "classical_kloosterman: c must be >= 1");
    if (c == 1) return cplx(1, 0);
    u64 am = u64(((a % i64(c)) + i64(c)) % i64(c));
    u64 bm = u64(((b % i64(c)) + i64(c)) % i64(c));
    cplx acc(0, 0);
    for (u64 x = 1; x < c; ++x) {
        if (std::gcd(x, c) != 1) continue;
        u64 xb = mod_inverse(x, c);
        u64 num = u64((u128(am) * x + u128(bm) * xb) % c);
        acc += e_frac(num, c);
    }
    return acc;
}

TraceFunction fourier_transform(const TraceFunction& K, EvalPath path) {
    const u64 q = K.modulus();
    bool use_fast = (path == EvalPath::Fast) || (path == EvalPath::Auto && q > 2048);
    const double scale = 1.0 / std::sqrt(double(q));
    std::vector<cplx> out;
    if (use_fast) {
        out = dft_bluestein(K.values(), +1);
        for (auto& z : out) z *= scale;
    } else {
        out.resize(q);
        const auto& v = K.values();
        for (u64 n = 0; n < q; ++n) {
            cplx acc = pairwise_sum<cplx>(q, [&](std::size_t x) {
                return v[x] * e_frac(u64(u128(n) * x % q), q);
            });
            out[n] = acc * scale;
        }
    }
    return TraceFunction(q, std::move(out), "FT[" + K.label() + "]");
}

TraceFunction crt_product(const TraceFunction& K0, const TraceFunction& K1) {
    const u64 q0 = K0.modulus(), q1 = K1.modulus();
    if (std::gcd(q0, q1) != 1)
        fail(ErrorCode::NonCoprimeModuli, "crt_product: moduli must be coprime");
    const u64 q = q0 * q1;
    std::vector<cplx> v(q);
    for (u64 n = 0; n < q; ++n) v[n] = K0.values()[n % q0] * K1.values()[n % q1];
    std::optional<double> hint;
    if (K0.supnorm_hint() && K1.supnorm_hint())
        hint = *K0.supnorm_hint() * *K1.supnorm_hint();
    return TraceFunction(q, std::move(v), K0.label() + " * " + K1.label(), hint);
}

double verify_twisted_multiplicativity(const TraceFunction& K0,
                                       const TraceFunction& K1,
                                       const FactoredModulus& m) {
    if (K0.modulus() != m.q0 || K1.modulus() != m.q1)
        fail(ErrorCode::ModulusMismatch, "verify_twisted_multiplicativity: moduli mismatch");
    TraceFunction K = crt_product(K0, K1);
    TraceFunction Khat = fourier_transform(K);
    TraceFunction K0hat = fourier_transform(K0);
    TraceFunction K1hat = fourier_transform(K1);
    double worst = 0.0;
    for (u64 b = 0; b < m.q; ++b) {
        u64 b0 = mul_mod(m.inv_q1_mod_q0, b % m.q0, m.q0);
        u64 b1 = mul_mod(m.inv_q0_mod_q1, b % m.q1, m.q1);
        cplx rhs = K0hat.values()[b0] * K1hat.values()[b1];
        worst = std::max(worst, std::abs(Khat.values()[b] - rhs));
    }
    return worst;
}

} // namespace twistlab
