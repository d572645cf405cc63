// bigint.hpp -- signed arbitrary-precision integers (32-bit limbs, sign +
// magnitude).  Sized for Fourier coefficients of weight <= 26 eigenforms:
// values up to a few hundred decimal digits, schoolbook multiplication.
#pragma once

#include "twistlab/common.hpp"

#include <vector>

namespace twistlab {

class BigInt {
public:
    BigInt() = default;
    BigInt(i64 v);
    static BigInt from_i128(i128 v);

    bool is_zero() const { return limbs_.empty(); }
    int sign() const { return limbs_.empty() ? 0 : (negative_ ? -1 : 1); }

    BigInt operator-() const;
    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);
    BigInt& operator+=(const BigInt& o) { *this = *this + o; return *this; }
    BigInt& operator-=(const BigInt& o) { *this = *this - o; return *this; }

    friend bool operator==(const BigInt& a, const BigInt& b) {
        return a.negative_ == b.negative_ && a.limbs_ == b.limbs_;
    }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }

    double to_double() const;
    std::string to_string() const;

    // little-endian magnitude bytes, no trailing zeros (empty for 0)
    std::vector<unsigned char> magnitude_bytes() const;
    static BigInt from_magnitude_bytes(const std::vector<unsigned char>& bytes, int sign);

    // exact when the value fits in 128 bits; throws OutOfRange otherwise
    i128 to_i128() const;

private:
    // limbs little-endian base 2^32; canonical form has no leading zero limb
    // and negative_ == false when zero
    bool negative_ = false;
    std::vector<u32> limbs_;

    void trim();
    static int cmp_mag(const BigInt& a, const BigInt& b);
    static BigInt add_mag(const BigInt& a, const BigInt& b, bool neg);
    static BigInt sub_mag(const BigInt& a, const BigInt& b, bool neg); // |a| >= |b|
};

} // namespace twistlab
