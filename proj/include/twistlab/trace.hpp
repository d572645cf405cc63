// trace.hpp -- q-periodic complex tables and the operations that build and
// transform them: additive and Dirichlet characters, hyper-Kloosterman
// sums, classical Kloosterman sums, the normalized Fourier transform, and
// CRT products for composite moduli.
#pragma once

#include "twistlab/common.hpp"
#include "twistlab/residue.hpp"

#include <atomic>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace twistlab {

// A q-periodic complex-valued table.  Immutable after construction; the
// Fourier sup-norm is computed on first request and cached (the cached
// value is a pure function of the table, so the benign race of two threads
// computing it concurrently is harmless).
class TraceFunction {
public:
    TraceFunction() = default;
    TraceFunction(u64 q, std::vector<cplx> values, std::string label,
                  std::optional<double> supnorm_hint = std::nullopt);

    TraceFunction(const TraceFunction& o);
    TraceFunction& operator=(const TraceFunction& o);
    TraceFunction(TraceFunction&&) noexcept = default;
    TraceFunction& operator=(TraceFunction&&) noexcept = default;

    u64 modulus() const { return q_; }
    const std::vector<cplx>& values() const { return values_; }
    const std::string& label() const { return label_; }
    std::optional<double> supnorm_hint() const { return supnorm_hint_; }

    const cplx& operator()(u64 n) const { return values_[n % q_]; }

    double sup_norm() const;
    // max_n |Khat(n)|; computed lazily from the fast transform path.
    double fourier_sup_norm() const;

private:
    u64 q_ = 0;
    std::vector<cplx> values_;
    std::string label_;
    std::optional<double> supnorm_hint_;
    mutable std::atomic<double> fourier_supnorm_{
        std::numeric_limits<double>::quiet_NaN()};
};

// Which evaluation path to use where a fast and a reference implementation
// both exist.  Auto switches on size.
enum class EvalPath { Auto, Direct, Fast };

// e(x/q) = exp(2*pi*i*x/q), reduced in integers first.
cplx e_q(u64 x, u64 q);

// x -> e(a*x/q).
TraceFunction additive_char(u64 a, u64 q);

// Dirichlet character mod prime q, indexed by j in [0, q-1):
// chi_j(g^t) = e(j*t/(q-1)) for the smallest primitive root g, chi_j(0)=0.
TraceFunction dirichlet_char(u64 q, u64 j);

// Indicator of the residue x0 mod q.
TraceFunction point_mass(u64 x0, u64 q);

// Constant function 1 mod q.
TraceFunction constant_one(u64 q);

// Kl_d(n;p) for all n mod p, by the convolution recursion
//   Kl_{d+1}(n) = p^{-1/2} sum_{y in F_p^x} Kl_d(n*ybar) e(y/p)
// run in discrete-log coordinates (length p-1 cyclic convolution).
// The value at n=0 is the one the recursion produces from Kl_1(0)=1,
// namely (-1)^(d-1) p^(-(d-1)/2); the defining sum read literally over
// unit tuples with product 0 would be empty (value 0) for d >= 2.  The
// bound experiments never query n=0, and the recursion value is exactly
// what makes the complete-sum identities in the correlation module hold
// with the x=0 term included.
TraceFunction hyper_kloosterman(int d, u64 p, EvalPath path = EvalPath::Auto);

// Unnormalized S(a,b;c) = sum over units x mod c of e((a x + b xbar)/c).
// Composite c allowed; S(a,b;1) = 1.
cplx classical_kloosterman(i64 a, i64 b, u64 c);

// Khat(n) = q^{-1/2} sum_x K(x) e(n x / q).  Direct path is the oracle;
// the fast path is the chirp DFT, used automatically for q > 2048.
TraceFunction fourier_transform(const TraceFunction& K, EvalPath path = EvalPath::Auto);

// K(n) = K0(n mod q0) * K1(n mod q1), modulus q0*q1.
TraceFunction crt_product(const TraceFunction& K0, const TraceFunction& K1);

// max_b | FT(K0*K1)(b) - K0hat(q1bar*b) * K1hat(q0bar*b) |.
double verify_twisted_multiplicativity(const TraceFunction& K0,
                                       const TraceFunction& K1,
                                       const FactoredModulus& m);

} // namespace twistlab
