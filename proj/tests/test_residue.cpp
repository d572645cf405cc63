#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twistlab/residue.hpp"
#include "twistlab/rng.hpp"

#include <numeric>

using namespace twistlab;

TEST_CASE("mod_inverse basics") {
    CHECK(mod_inverse(1, 7) == 1);
    CHECK(mod_inverse(2, 5) == 3);
    CHECK_THROWS_AS(mod_inverse(2, 4), Error);
    try {
        mod_inverse(2, 4);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotInvertible);
    }
}

TEST_CASE("mod_inverse random property") {
    Rng rng(12345);
    int done = 0;
    while (done < 1000) {
        u64 q = 2 + rng.below(1000000);
        u64 a = rng.below(q);
        if (a == 0 || std::gcd(a, q) != 1) continue;
        u64 b = mod_inverse(a, q);
        CHECK(mul_mod(a, b, q) == 1);
        ++done;
    }
}

TEST_CASE("primality") {
    CHECK(is_prime(2));
    CHECK(is_prime(2063));
    CHECK(is_prime(961748941));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(2047));       // 23 * 89, strong pseudoprime base 2
    CHECK_FALSE(is_prime(3215031751)); // Carmichael-ish classic
}

TEST_CASE("primitive roots are the smallest generators") {
    CHECK(primitive_root(2) == 1);
    CHECK(primitive_root(5) == 2);
    CHECK(primitive_root(7) == 3);
    // exhaustive order check for a few primes
    for (u64 p : {11ULL, 13ULL, 101ULL, 199ULL}) {
        u64 g = primitive_root(p);
        for (u64 h = 2; h < g; ++h) {
            // every smaller h must have smaller order
            u64 x = h, order = 1;
            while (x != 1) { x = mul_mod(x, h, p); ++order; }
            CHECK(order < p - 1);
        }
        u64 x = g, order = 1;
        while (x != 1) { x = mul_mod(x, g, p); ++order; }
        CHECK(order == p - 1);
    }
}

TEST_CASE("factored modulus invariants") {
    FactoredModulus m(2063, 47);
    CHECK(m.q == 2063ULL * 47);
    CHECK(mul_mod(m.q1 % m.q0, m.inv_q1_mod_q0, m.q0) == 1);
    CHECK(mul_mod(m.q0 % m.q1, m.inv_q0_mod_q1, m.q1) == 1);
    CHECK_THROWS_AS(FactoredModulus(6, 5), Error);
    CHECK_THROWS_AS(FactoredModulus(7, 7), Error);
}

TEST_CASE("crt_combine examples and bijection") {
    FactoredModulus m(3, 5);
    CHECK(crt_combine(0, 0, m) == 0);
    CHECK(crt_combine(2, 3, m) == 8);
    CHECK(crt_combine(1, 1, m) == 1);
    // bijection (Z/3) x (Z/5) -> Z/15, and reduction inverts it
    std::vector<bool> seen(15, false);
    for (u64 r0 = 0; r0 < 3; ++r0)
        for (u64 r1 = 0; r1 < 5; ++r1) {
            u64 r = crt_combine(r0, r1, m);
            CHECK(r < 15);
            CHECK_FALSE(seen[r]);
            seen[r] = true;
            CHECK(r % 3 == r0);
            CHECK(r % 5 == r1);
        }
}

TEST_CASE("root table group law, all pairs") {
    for (u64 q : {7ULL, 256ULL, 1000ULL}) {
        RootTable rt(q);
        for (u64 x = 0; x < q; ++x) {
            CHECK(std::abs(std::abs(rt(x)) - 1.0) < 1e-12);
        }
        double worst = 0;
        for (u64 x = 0; x < q; ++x)
            for (u64 y = 0; y < q; ++y)
                worst = std::max(worst, std::abs(rt(x) * rt(y) - rt((x + y) % q)));
        CHECK(worst < 1e-10);
    }
}
