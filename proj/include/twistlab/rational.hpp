// rational.hpp -- exact rational arithmetic for the exponent bookkeeping
// (levels of distribution, Landau exponents, the Ramanujan bound on GL3).
#pragma once

#include "twistlab/common.hpp"

#include <numeric>

namespace twistlab {

struct Rational {
    i64 num = 0;
    i64 den = 1;

    Rational() = default;
    Rational(i64 n) : num(n), den(1) {}
    Rational(i64 n, i64 d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) fail(ErrorCode::InvalidParams, "rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        i64 g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    double value() const { return double(num) / double(den); }

    friend Rational operator+(Rational a, Rational b) {
        return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Rational operator-(Rational a, Rational b) {
        return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Rational operator*(Rational a, Rational b) {
        return Rational(a.num * b.num, a.den * b.den);
    }
    friend Rational operator/(Rational a, Rational b) {
        if (b.num == 0) fail(ErrorCode::InvalidParams, "rational division by zero");
        return Rational(a.num * b.den, a.den * b.num);
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
};

// The exponent constants appearing in the bound formulas.
namespace bound_constants {

// standard level of distribution theta_d = 2/(d+1)
inline Rational standard_level(int d) { return Rational(2, d + 1); }

// Landau exponent tau_d = (d-1)/(d+1) for sharp-cut coefficient sums
inline Rational landau_exponent(int d) { return Rational(d - 1, d + 1); }

// Kim--Sarnak bound towards Ramanujan--Petersson on GL3 (distinct from the
// degree-3 standard level 1/2; both get called theta_3 in the literature).
inline Rational ramanujan_theta3() { return Rational(5, 14); }

} // namespace bound_constants

} // namespace twistlab
