// rng.hpp -- the reproducible 64-bit generator used for every randomized
// draw (parameter tuples, histogram sampling, test inputs).
//
// The generator is splitmix64, written out so that runs can be reproduced
// in any language from the constants alone:
//
//   state += 0x9E3779B97F4A7C15
//   z = state
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
//
// Bounded draws are next() % n (the modulo bias is irrelevant here; the
// point is cross-implementation reproducibility, which the fixed rule
// guarantees).
#pragma once

#include "twistlab/common.hpp"

namespace twistlab {

class Rng {
public:
    explicit Rng(u64 seed) : state_(seed) {}

    u64 next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        u64 z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n)
    u64 below(u64 n) { return next() % n; }

    // uniform in [1, n)
    u64 nonzero_below(u64 n) { return 1 + next() % (n - 1); }

    // uniform unit of Z/pZ for p prime (same as nonzero for prime modulus)
    u64 unit_mod_prime(u64 p) { return nonzero_below(p); }

    // uniform double in [0, 1)
    double uniform01() { return double(next() >> 11) * 0x1.0p-53; }

    // uniform in [-1, 1)
    double symmetric() { return 2.0 * uniform01() - 1.0; }

private:
    u64 state_;
};

} // namespace twistlab
