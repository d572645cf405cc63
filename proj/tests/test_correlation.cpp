#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twistlab/correlation.hpp"
#include "twistlab/rng.hpp"

#include <numeric>

using namespace twistlab;

TEST_CASE("moebius action") {
    const u64 q0 = 5;
    MoebiusMatrix id;
    for (u64 a = 0; a < q0; ++a) CHECK(moebius_act(id, a, q0) == ProjPoint::at(a));

    MoebiusMatrix inv{0, 1, 1, 0};
    CHECK(moebius_act(inv, 2, q0) == ProjPoint::at(3));
    CHECK(moebius_act(inv, 0, q0) == ProjPoint::infinity());
    CHECK(moebius_act(inv, ProjPoint::infinity(), q0) == ProjPoint::at(0));

    MoebiusMatrix pole{1, 0, 1, q0 - 2}; // c=1, d=-2: pole at alpha=2
    CHECK(moebius_act(pole, 2, q0) == ProjPoint::infinity());
}

TEST_CASE("moebius action is a group action (exhaustive, q0 = 13)") {
    const u64 q0 = 13;
    Rng rng(31);
    for (int rep = 0; rep < 40; ++rep) {
        MoebiusMatrix g1{rng.below(q0), rng.below(q0), rng.below(q0), rng.below(q0)};
        MoebiusMatrix g2{rng.below(q0), rng.below(q0), rng.below(q0), rng.below(q0)};
        if (!g1.invertible(q0) || !g2.invertible(q0)) continue;
        MoebiusMatrix g12 = matrix_mul(g1, g2, q0);
        for (u64 a = 0; a < q0; ++a) {
            CHECK(moebius_act(g12, a, q0) == moebius_act(g1, moebius_act(g2, ProjPoint::at(a), q0), q0));
        }
        CHECK(moebius_act(g12, ProjPoint::infinity(), q0) ==
              moebius_act(g1, moebius_act(g2, ProjPoint::infinity(), q0), q0));
    }
}

TEST_CASE("scalar pair detection") {
    const u64 q0 = 13;
    Rng rng(77);
    for (int rep = 0; rep < 30; ++rep) {
        MoebiusMatrix g{rng.below(q0), rng.below(q0), rng.below(q0), rng.below(q0)};
        if (!g.invertible(q0)) continue;
        CHECK(is_scalar_pair(g, g, q0));
        for (u64 c = 1; c < q0; ++c) {
            MoebiusMatrix cg{mul_mod(c, g.a, q0), mul_mod(c, g.b, q0), mul_mod(c, g.c, q0),
                             mul_mod(c, g.d, q0)};
            CHECK(is_scalar_pair(g, cg, q0));
        }
        MoebiusMatrix shift{1, 1, 0, 1};
        CHECK_FALSE(is_scalar_pair(g, matrix_mul(shift, g, q0), q0));
    }
}

TEST_CASE("upper-triangular scalar criterion, exhaustive for q0 = 13") {
    // [[p1^2 q1, -(p1 r1 - p2 r2)], [0, p2^2 q1]] is scalar iff
    // p1 r1 = p2 r2 and p1 = +-p2 (mod q0)
    const u64 q0 = 13;
    const u64 q1 = 5;
    for (u64 p1 = 1; p1 < q0; ++p1)
        for (u64 p2 = 1; p2 < q0; ++p2)
            for (u64 r1 = 1; r1 < q0; ++r1)
                for (u64 r2 = 1; r2 < q0; ++r2) {
                    MoebiusMatrix m{mul_mod(mul_mod(p1, p1, q0), q1, q0),
                                    sub_mod(mul_mod(p2, r2, q0), mul_mod(p1, r1, q0), q0), 0,
                                    mul_mod(mul_mod(p2, p2, q0), q1, q0)};
                    bool criterion = (mul_mod(p1, r1, q0) == mul_mod(p2, r2, q0)) &&
                                     (p1 == p2 || add_mod(p1, p2, q0) == 0);
                    CHECK(is_scalar(m, q0) == criterion);
                }
}

TEST_CASE("matrix correlation basics") {
    const u64 q0 = 101;
    TraceFunction K0hat = fourier_transform(hyper_kloosterman(3, q0));

    // identity matrix: q0^{-1/2} sum of |K0hat|^2 over units
    auto r = matrix_correlation(K0hat, MoebiusMatrix{}, q0);
    double want = 0;
    for (u64 a = 1; a < q0; ++a) want += std::norm(K0hat.values()[a]);
    CHECK(r.value.real() == doctest::Approx(want / std::sqrt(double(q0))));
    CHECK(std::abs(r.value.imag()) < 1e-12);
    CHECK(r.skipped == 0);

    // constant table: the sum counts non-pole units
    TraceFunction ones = constant_one(q0);
    MoebiusMatrix g{2, 3, 1, 4};
    auto rc = matrix_correlation(ones, g, q0);
    CHECK(std::abs(rc.value.imag()) < 1e-12);
    CHECK(rc.value.real() ==
          doctest::Approx(double(q0 - 1 - rc.skipped) / std::sqrt(double(q0))));
}

TEST_CASE("correlation sum: direct vs matrix route within pole bookkeeping") {
    for (u64 q0 : {13ULL, 101ULL}) {
        TraceFunction K0hat = fourier_transform(hyper_kloosterman(3, q0));
        double norm2 = K0hat.sup_norm() * K0hat.sup_norm();
        double allowed = 5.0 * norm2 / std::sqrt(double(q0));
        Rng rng(q0);
        for (int rep = 0; rep < 60; ++rep) {
            CorrelationParams p;
            p.r1 = rng.unit_mod_prime(q0);
            p.r2 = rng.unit_mod_prime(q0);
            p.p1 = rng.unit_mod_prime(q0);
            p.p2 = rng.unit_mod_prime(q0);
            p.q1 = rng.unit_mod_prime(q0);
            p.n_tilde = rng.below(q0);
            p.sign = (rng.next() & 1) ? +1 : -1;
            auto direct = correlation_sum(K0hat, p, q0);
            auto [g1, g2] = correlation_matrices(p, q0);
            auto viamat = matrix_correlation(K0hat, matrix_mul(g2, matrix_inverse(g1, q0), q0), q0);
            CHECK(std::abs(direct.value - viamat.value) <= allowed);
        }
    }
}

TEST_CASE("correlation sum against an independent nested-loop oracle") {
    const u64 q0 = 13;
    TraceFunction K0hat = fourier_transform(hyper_kloosterman(3, q0));
    CorrelationParams p{1, 1, 2, 3, 1, 5, +1};
    auto got = correlation_sum(K0hat, p, q0);

    // oracle: literal transcription with scalar arithmetic
    cplx acc(0, 0);
    u64 skipped = 0;
    for (u64 alpha = 1; alpha < q0; ++alpha) {
        u64 abar = mod_inverse(alpha, q0);
        u64 t = (abar * p.p2 + p.n_tilde) % q0;
        if (t == 0) { ++skipped; continue; }
        u64 a1 = ((p.r1 + q0 * q0 - alpha * p.q1 % q0) % q0) * mod_inverse(p.q1 * p.p1 % q0, q0) % q0;
        u64 a2 = ((p.r2 + q0 * q0 - mod_inverse(t, q0) * p.p1 % q0 * p.q1 % q0) % q0) *
                 mod_inverse(p.q1 * p.p2 % q0, q0) % q0;
        acc += K0hat.values()[a1] * std::conj(K0hat.values()[a2]);
    }
    acc /= std::sqrt(double(q0));
    CHECK(got.skipped == skipped);
    CHECK(std::abs(got.value - acc) < 1e-10);
}

TEST_CASE("resonant zero-frequency correlation is large") {
    // n_tilde = 0 with p1 r1 = p2 r2, p1 = p2: scalar pair, so the sum is a
    // positive mass of size ~ sqrt(q0)
    for (u64 q0 : {101ULL, 151ULL, 199ULL}) {
        TraceFunction K0hat = fourier_transform(hyper_kloosterman(3, q0));
        CorrelationParams p;
        p.p1 = p.p2 = 2;
        p.r1 = p.r2 = 3;
        p.q1 = 5;
        p.n_tilde = 0;
        auto [g1, g2] = correlation_matrices(p, q0);
        CHECK(is_scalar_pair(g1, g2, q0));
        auto v = correlation_sum(K0hat, p, q0);
        CHECK(std::abs(v.value) >= 0.2 * std::sqrt(double(q0)));
    }
}

TEST_CASE("l_sum") {
    const u64 q = 13;
    TraceFunction K0hat = fourier_transform(hyper_kloosterman(3, q));

    // alpha = 0: plain restricted sum of Khat
    cplx want(0, 0);
    for (u64 b = 0; b < q; ++b)
        if ((b + 4) % q != 0) want += K0hat.values()[b];
    CHECK(std::abs(l_sum(K0hat, 0, 1, 4) - want / std::sqrt(double(q))) < 1e-12);

    // K = point mass at 0: Khat constant q^{-1/2}; the L-sum becomes a
    // Ramanujan-type complete sum, -1/q for alpha a unit
    TraceFunction hat_pm = fourier_transform(point_mass(0, q));
    CHECK(std::abs(l_sum(hat_pm, 2, 1, 5) - cplx(-1.0 / q, 0)) < 1e-12);

    // composite modulus: terms with non-invertible b + beta u are skipped
    TraceFunction hat15 = fourier_transform(point_mass(0, 15));
    cplx ram(0, 0);
    for (u64 b = 0; b < 15; ++b) {
        u64 s = (b + 2) % 15;
        if (std::gcd(s, 15ULL) != 1) continue;
        ram += e_q(mul_mod(7, mod_inverse(s, 15), 15), 15);
    }
    CHECK(std::abs(l_sum(hat15, 7, 1, 2) - ram / 15.0) < 1e-12);

    // empirical band for transformed hyper-Kloosterman input
    for (u64 p : {101ULL, 199ULL}) {
        TraceFunction hat = fourier_transform(hyper_kloosterman(3, p));
        Rng rng(p);
        for (int i = 0; i < 50; ++i)
            CHECK(std::abs(l_sum(hat, rng.nonzero_below(p), rng.nonzero_below(p),
                                 rng.below(p))) <= 4.0);
    }
}

TEST_CASE("z transform") {
    const u64 q0 = 13;
    TraceFunction K0 = hyper_kloosterman(3, q0);
    TraceFunction kl2 = hyper_kloosterman(2, q0);

    ZTable Z = z_transform(K0, kl2, 1, 1, 1);
    // nested-loop oracle
    for (u64 v = 0; v < q0; ++v) {
        cplx acc(0, 0);
        for (u64 x = 1; x < q0; ++x)
            acc += kl2.values()[x] * K0.values()[x * v % q0] * kl2.values()[x * v % q0];
        CHECK(std::abs(Z.values[v] - acc / std::sqrt(double(q0))) < 1e-10);
    }

    // v = 0 row: the tabulated convention value
    cplx row0 = kl2.values()[0] * K0.values()[0];
    cplx s(0, 0);
    for (u64 x = 1; x < q0; ++x) s += kl2.values()[x];
    CHECK(std::abs(Z.values[0] - row0 * s / std::sqrt(double(q0))) < 1e-12);
    CHECK(Z.zero_index_contributes);

    // bilinearity: scaling K0 scales Z
    std::vector<cplx> scaled = K0.values();
    for (auto& z : scaled) z *= cplx(0.5, 0.25);
    ZTable Z2 = z_transform(TraceFunction(q0, scaled, "scaled"), kl2, 1, 1, 1);
    for (u64 v = 0; v < q0; ++v)
        CHECK(std::abs(Z2.values[v] - cplx(0.5, 0.25) * Z.values[v]) < 1e-12);
}

TEST_CASE("zz correlation") {
    const u64 q0 = 13;
    TraceFunction K0 = hyper_kloosterman(3, q0);
    ZTable Z = z_transform(K0, 2, 1, 3);

    ZTable zero;
    zero.q0 = q0;
    zero.values.assign(q0, cplx(0, 0));
    CHECK(std::abs(zz_correlation(Z, zero, 5)) == 0.0);

    ZTable other;
    other.q0 = 7;
    other.values.assign(7, cplx(0, 0));
    CHECK_THROWS_AS(zz_correlation(Z, other, 0), Error);

    // shift-0 self correlation is the positive mass sum |Z|^2
    cplx self = zz_correlation(Z, Z, 0);
    double mass = 0;
    for (auto& z : Z.values) mass += std::norm(z);
    CHECK(self.real() == doctest::Approx(mass));
    CHECK(std::abs(self.imag()) < 1e-12);
}

TEST_CASE("character error sum: the two routes are the same complete sum") {
    for (u64 q0 : {13ULL, 101ULL}) {
        TraceFunction K0 = hyper_kloosterman(3, q0);
        Rng rng(q0 + 1);
        for (int rep = 0; rep < 50; ++rep) {
            u64 r = rng.below(q0);
            u64 n = rng.nonzero_below(q0);
            int sign = (rng.next() & 1) ? +1 : -1;
            auto v = char_error_sum(K0, r, n, q0, 5, sign);
            CHECK(v.route_diff < 1e-9);
        }
    }

    // zero trace function annihilates the sum
    std::vector<cplx> z(13, cplx(0, 0));
    auto v = char_error_sum(TraceFunction(13, z, "zero"), 1, 1, 13, 5, +1);
    CHECK(std::abs(v.value) == 0.0);

    // empirical band for the normalized complete sum
    TraceFunction K0 = hyper_kloosterman(3, 199);
    Rng rng(9);
    for (int rep = 0; rep < 40; ++rep) {
        auto w = char_error_sum(K0, rng.below(199), rng.nonzero_below(199), 199, 7,
                                (rng.next() & 1) ? +1 : -1);
        CHECK(std::abs(w.value) <= 5.0);
    }
}

TEST_CASE("m_sum and the k-part Fourier transform") {
    // degenerate single-term case: everything collapses to 1
    FtKParams p;
    p.m = 1; p.mp = 1; p.r = 1; p.c1 = 1; p.c2 = 1; p.c2p = 1; p.n1 = 1;
    p.q0 = 13; p.q1 = 5; p.sign = +1;
    auto v = ft_k_sum(p, 0);
    CHECK(std::abs(v.value - cplx(1, 0)) < 1e-12);
    CHECK(v.within_bound);

    CHECK_THROWS_AS(m_sum(1, 1, 2, 3, 5, 13, 7, +1), Error); // n1 does not divide r c

    // zero-frequency divisor bound, exhaustively over a clean family
    for (u64 r : {1ULL, 2ULL}) {
        for (u64 c1 : {1ULL, 2ULL, 3ULL}) {
            for (u64 c2 : {1ULL, 2ULL, 4ULL}) {
                for (u64 c2p : {1ULL, 3ULL}) {
                    for (int sign : {+1, -1}) {
                        for (auto [m, mp] : {std::pair<u64, u64>{2, 4}, {5, 5}, {1, 7}}) {
                            if (r * c1 * c2 > 60 || r * c1 * c2p > 60) continue;
                            FtKParams q;
                            q.m = m; q.mp = mp; q.r = r; q.c1 = c1; q.c2 = c2; q.c2p = c2p;
                            q.n1 = r; // keeps every displayed inverse defined
                            q.q0 = 13; q.q1 = 11; q.sign = sign;
                            if (std::gcd(q.q0 * q.q1, r * c1 * c2 * c2p) != 1) continue;
                            auto w = ft_k_sum(q, 0);
                            CHECK(w.within_bound);
                            CHECK(w.skipped == 0);
                        }
                    }
                }
            }
        }
    }

    // nonzero frequencies on random clean tuples
    Rng rng(17);
    int tried = 0;
    while (tried < 300) {
        FtKParams q;
        q.r = 1 + rng.below(3);
        q.c1 = 1 + rng.below(4);
        q.c2 = 1 + rng.below(5);
        q.c2p = 1 + rng.below(5);
        q.n1 = q.r;
        q.q0 = 13;
        q.q1 = 11;
        q.m = 1 + rng.below(8);
        q.mp = 1 + rng.below(8);
        q.sign = (rng.next() & 1) ? +1 : -1;
        u64 k = q.r * q.c1 * q.c2 * q.c2p / q.n1;
        if (k > 500 || std::gcd(q.q0 * q.q1, q.r * q.c1 * q.c2 * q.c2p) != 1) continue;
        i64 n = 1 + i64(rng.below(k > 1 ? k - 1 : 1));
        auto w = ft_k_sum(q, n);
        CHECK(w.within_bound);
        ++tried;
    }
}

TEST_CASE("q0-sum two-route agreement") {
    // zero trace function: both routes vanish
    {
        FactoredModulus m(13, 5);
        std::vector<cplx> z(13, cplx(0, 0));
        FtQ0Params p;
        p.m = 1; p.mp = 2; p.c = 1; p.cp = 2; p.r = 1; p.n1 = 1; p.delta = 3;
        auto v = ft_q0_sum(TraceFunction(13, z, "zero"), dirichlet_char(5, 1), p, m);
        CHECK(std::abs(v.route_a) < 1e-12);
        CHECK(std::abs(v.route_b) < 1e-12);
    }

    for (u64 q0 : {13ULL, 17ULL}) {
        FactoredModulus m(q0, 5);
        TraceFunction K0 = hyper_kloosterman(3, q0);
        TraceFunction K1 = dirichlet_char(5, 1);
        Rng rng(q0 * 31);
        int done = 0;
        while (done < 12) {
            FtQ0Params p;
            p.m = 1 + rng.below(30);
            p.mp = 1 + rng.below(30);
            p.c = 1 + rng.below(20);
            p.cp = 1 + rng.below(20);
            p.r = 1 + rng.below(10);
            p.n1 = 1 + rng.below(4);
            p.delta = rng.below(q0);
            p.sign_m = (rng.next() & 1) ? +1 : -1;
            p.sign_n = (rng.next() & 1) ? +1 : -1;
            if (std::gcd(p.c * p.cp * p.r, m.q) != 1) continue;
            if (p.m % q0 == 0 || p.mp % q0 == 0 || p.n1 % q0 == 0) continue;
            if (std::gcd(p.m, m.q1) != 1 || std::gcd(p.mp, m.q1) != 1) continue;
            auto v = ft_q0_sum(K0, K1, p, m);
            CHECK(v.rel_diff < 1e-8);
            ++done;
        }
    }
}
