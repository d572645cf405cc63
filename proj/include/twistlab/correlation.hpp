// correlation.hpp -- the complete exponential sums behind both bound
// proofs: Moebius-twisted correlations of Fourier-transformed trace
// functions, the L-sums, the Z(v) transform and its shifted
// autocorrelation, the M/FT complete sums with their divisor bounds, and
// the two-route factorization check for the q0-sum.
#pragma once

#include "twistlab/common.hpp"
#include "twistlab/residue.hpp"
#include "twistlab/trace.hpp"

#include <numeric>
#include <vector>

namespace twistlab {

// point of P^1(F_q0)
struct ProjPoint {
    bool infinite = false;
    u64 value = 0;

    static ProjPoint at(u64 v) { return {false, v}; }
    static ProjPoint infinity() { return {true, 0}; }
    friend bool operator==(const ProjPoint& a, const ProjPoint& b) {
        return a.infinite == b.infinite && (a.infinite || a.value == b.value);
    }
};

struct MoebiusMatrix {
    u64 a = 1, b = 0, c = 0, d = 1; // residues mod q0

    u64 det(u64 q0) const { return sub_mod(mul_mod(a, d, q0), mul_mod(b, c, q0), q0); }
    bool invertible(u64 q0) const { return std::gcd(det(q0), q0) == 1; }
};

MoebiusMatrix matrix_mul(const MoebiusMatrix& x, const MoebiusMatrix& y, u64 q0);
MoebiusMatrix matrix_inverse(const MoebiusMatrix& g, u64 q0);
bool is_scalar(const MoebiusMatrix& g, u64 q0);

// gamma . alpha = (a alpha + b)/(c alpha + d) on P^1(F_q0)
ProjPoint moebius_act(const MoebiusMatrix& g, ProjPoint alpha, u64 q0);
ProjPoint moebius_act(const MoebiusMatrix& g, u64 alpha, u64 q0);

// whether gamma2 gamma1^{-1} is scalar mod q0
bool is_scalar_pair(const MoebiusMatrix& g1, const MoebiusMatrix& g2, u64 q0);

struct CorrelationValue {
    cplx value;
    u64 skipped = 0; // poles / undefined inverses omitted from the sum
};

// q0^{-1/2} sum over alpha in (Z/q0)^x with g.alpha finite of
// K0hat(alpha) conj(K0hat(g.alpha)); skipped counts the poles.
CorrelationValue matrix_correlation(const TraceFunction& K0hat, const MoebiusMatrix& g, u64 q0);

// Parameters of the correlation sum: r1, r2, p1, p2, q1 units mod q0,
// the dual frequency n_tilde, and the sign s in (alphabar p2 + s n_tilde).
struct CorrelationParams {
    u64 r1 = 1, r2 = 1, p1 = 1, p2 = 1;
    u64 n_tilde = 0;
    u64 q1 = 1;
    int sign = +1;
};

// The defining alpha-sum:
//   q0^{-1/2} sum*_alpha K0hat((r1 - alpha q1) inv(q1 p1))
//                  conj K0hat((r2 - inv(abar p2 + s nt) p1 q1) inv(q1 p2)),
// alpha with abar p2 + s nt == 0 skipped and counted.
CorrelationValue correlation_sum(const TraceFunction& K0hat, const CorrelationParams& p, u64 q0);

// The fractional-linear pair realizing the same correlation:
//   g1 = [[-q1, r1], [0, p1 q1]],
//   g2 = [[s nt r2 - p1 q1, p2 r2], [s nt p2 q1, p2^2 q1]].
std::pair<MoebiusMatrix, MoebiusMatrix> correlation_matrices(const CorrelationParams& p, u64 q0);

// L_{alpha,beta}(u; q) = q^{-1/2} sum over b mod q with (b + beta u, q) = 1
// of Khat(b) e(alpha inv(b + beta u)/q).  Works for prime or composite q.
cplx l_sum(const TraceFunction& Khat, u64 alpha, u64 beta, u64 u);

struct ZTable {
    u64 q0 = 0;
    std::vector<cplx> values;
    bool zero_index_contributes = false; // x*v == 0 terms entered (v = 0 row)
};

// Z_{alpha,beta,gamma}(v) = q0^{-1/2} sum over x in F_q0^x of
// Kl2(beta gamma x) K0(x v) Kl2(alpha x v), tabulated for all v mod q0.
ZTable z_transform(const TraceFunction& K0, const TraceFunction& kl2,
                   u64 alpha, u64 beta, u64 gamma);
ZTable z_transform(const TraceFunction& K0, u64 alpha, u64 beta, u64 gamma);

// sum_v Z(v) conj(Zp(v - delta))
cplx zz_correlation(const ZTable& Z, const ZTable& Zp, u64 delta);

struct TwoRouteValue {
    cplx value;       // primary route
    cplx alt;         // independent rewriting
    double route_diff; // |value - alt|
};

// q0^{-1/2} sum_x K0(x) e(r q1bar x / q0) Kl2(s n x; q0), checked against
// the alpha-sum rewriting q0^{-1/2} sum*_alpha K0hat((r - alpha q1) q1bar)
// e(-s abar n / q0).
TwoRouteValue char_error_sum(const TraceFunction& K0, u64 r, u64 n, u64 q0, u64 q1, int sign);

// M_{n1,r}(m, n; r c) = sum over units u mod c of
//   e(s inv(u q1^2) inv(q0) m / c) S(inv(q0) r ubar, s inv(q0) n; r c / n1)
// with the inverses in the e-factor taken mod c and those inside S taken
// mod rc/n1.  Terms whose displayed inverse does not exist mod rc/n1 are
// skipped and counted.
CorrelationValue m_sum(u64 m, u64 n, u64 r, u64 c, u64 n1, u64 q0, u64 q1, int sign);

struct FtKParams {
    u64 m = 1, mp = 1;
    u64 r = 1, c1 = 1, c2 = 1, c2p = 1, n1 = 1;
    u64 q0 = 2, q1 = 3;
    int sign = +1;
};

struct FtKValue {
    cplx value;
    double bound_rhs;  // divisor-sum bound for this frequency
    bool within_bound; // |value| <= bound_rhs + 1e-9
    u64 skipped = 0;
};

// FT(n;k) = k^{-1/2} sum_{v mod k} M(m,v;rc1c2) conj(M(mp,v;rc1c2p))
//           e(n v inv(q0) / k),  k = r c1 c2 c2p / n1,
// together with the divisor-sum estimate for it (the n = 0 and n != 0
// shapes differ).
FtKValue ft_k_sum(const FtKParams& p, i64 n);

struct FtQ0Params {
    u64 m = 1, mp = 1;  // dual GL2 frequencies
    u64 c = 1, cp = 1;  // delta-method moduli (coprime to q)
    u64 r = 1;          // GL3 index
    u64 n1 = 1;         // divisor parameter
    u64 delta = 0;      // dual frequency mod q0 (= kbar n in the pipeline)
    int sign_m = +1;    // sign in the L arguments
    int sign_n = +1;    // sign in the Kl2 arguments
};

struct FtQ0Value {
    cplx route_a;      // direct (u, u', v) triple sum
    cplx route_b;      // L-factor x sqrt(q0) sum_v Z(v) conj(Z'(v - delta))
    double rel_diff;
};

// The q0-sum of the dual expansion, evaluated two ways:
//   A: q0^{-1/2} sum_{u,u' units} L_{a,1}(u q1; q) conj(L_{a',1}(u' q1; q))
//      sum_v Kl2(g v ubar) Kl2(g' v u'bar) e(delta v / q0)
//   B: L1(0) conj(L1'(0)) sqrt(q0) sum_v Z_{a0,1,g}(v) conj(Z_{a0',1,g'}(v-delta))
// with a = sign_m cbar^2 rbar^2 m mod q, g = sign_n cbar^3 rbar^3 n1^2
// mod q0, and the mod-q1 / mod-q0 reductions of a feeding route B.
FtQ0Value ft_q0_sum(const TraceFunction& K0, const TraceFunction& K1,
                    const FtQ0Params& p, const FactoredModulus& mod);

} // namespace twistlab
