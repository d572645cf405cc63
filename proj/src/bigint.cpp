#include "twistlab/bigint.hpp"

#include <algorithm>
#include <cmath>

namespace twistlab {

BigInt::BigInt(i64 v) {
    negative_ = v < 0;
    u64 m = negative_ ? (~u64(v) + 1) : u64(v);
    while (m) { limbs_.push_back(u32(m)); m >>= 32; }
}

BigInt BigInt::from_i128(i128 v) {
    BigInt r;
    r.negative_ = v < 0;
    u128 m = r.negative_ ? (~u128(v) + 1) : u128(v);
    while (m) { r.limbs_.push_back(u32(m)); m >>= 32; }
    return r;
}

void BigInt::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) negative_ = false;
}

int BigInt::cmp_mag(const BigInt& a, const BigInt& b) {
    if (a.limbs_.size() != b.limbs_.size())
        return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
    for (std::size_t i = a.limbs_.size(); i-- > 0;) {
        if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
    }
    return 0;
}

BigInt BigInt::add_mag(const BigInt& a, const BigInt& b, bool neg) {
    BigInt r;
    r.negative_ = neg;
    const std::size_t n = std::max(a.limbs_.size(), b.limbs_.size());
    r.limbs_.resize(n);
    u64 carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
        u64 s = carry;
        if (i < a.limbs_.size()) s += a.limbs_[i];
        if (i < b.limbs_.size()) s += b.limbs_[i];
        r.limbs_[i] = u32(s);
        carry = s >> 32;
    }
    if (carry) r.limbs_.push_back(u32(carry));
    r.trim();
    return r;
}

BigInt BigInt::sub_mag(const BigInt& a, const BigInt& b, bool neg) {
    BigInt r;
    r.negative_ = neg;
    r.limbs_.resize(a.limbs_.size());
    i64 borrow = 0;
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
        i64 d = i64(a.limbs_[i]) - borrow - (i < b.limbs_.size() ? i64(b.limbs_[i]) : 0);
        if (d < 0) { d += (i64(1) << 32); borrow = 1; } else borrow = 0;
        r.limbs_[i] = u32(d);
    }
    r.trim();
    return r;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    if (!r.limbs_.empty()) r.negative_ = !r.negative_;
    return r;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.negative_ == b.negative_) return BigInt::add_mag(a, b, a.negative_);
    int c = BigInt::cmp_mag(a, b);
    if (c == 0) return BigInt();
    return c > 0 ? BigInt::sub_mag(a, b, a.negative_) : BigInt::sub_mag(b, a, b.negative_);
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.is_zero() || b.is_zero()) return BigInt();
    BigInt r;
    r.negative_ = a.negative_ != b.negative_;
    r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
        u64 carry = 0;
        for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
            u64 cur = u64(a.limbs_[i]) * b.limbs_[j] + r.limbs_[i + j] + carry;
            r.limbs_[i + j] = u32(cur);
            carry = cur >> 32;
        }
        std::size_t k = i + b.limbs_.size();
        while (carry) {
            u64 cur = u64(r.limbs_[k]) + carry;
            r.limbs_[k] = u32(cur);
            carry = cur >> 32;
            ++k;
        }
    }
    r.trim();
    return r;
}

double BigInt::to_double() const {
    double v = 0.0;
    for (std::size_t i = limbs_.size(); i-- > 0;) v = v * 4294967296.0 + double(limbs_[i]);
    return negative_ ? -v : v;
}

std::string BigInt::to_string() const {
    if (is_zero()) return "0";
    std::vector<u32> work = limbs_;
    std::string digits;
    while (!work.empty()) {
        // divide magnitude by 10^9
        u64 rem = 0;
        for (std::size_t i = work.size(); i-- > 0;) {
            u64 cur = (rem << 32) | work[i];
            work[i] = u32(cur / 1000000000);
            rem = cur % 1000000000;
        }
        while (!work.empty() && work.back() == 0) work.pop_back();
        for (int d = 0; d < 9; ++d) {
            digits.push_back(char('0' + rem % 10));
            rem /= 10;
        }
    }
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    if (negative_) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
}

std::vector<unsigned char> BigInt::magnitude_bytes() const {
    std::vector<unsigned char> out;
    for (u32 limb : limbs_) {
        out.push_back(limb & 0xFF);
        out.push_back((limb >> 8) & 0xFF);
        out.push_back((limb >> 16) & 0xFF);
        out.push_back((limb >> 24) & 0xFF);
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

BigInt BigInt::from_magnitude_bytes(const std::vector<unsigned char>& bytes, int sign) {
    BigInt r;
    r.limbs_.assign((bytes.size() + 3) / 4, 0);
    for (std::size_t i = 0; i < bytes.size(); ++i)
        r.limbs_[i / 4] |= u32(bytes[i]) << (8 * (i % 4));
    r.trim();
    r.negative_ = sign < 0 && !r.limbs_.empty();
    return r;
}

i128 BigInt::to_i128() const {
    if (limbs_.size() > 4) fail(ErrorCode::OutOfRange, "BigInt::to_i128: too large");
    u128 m = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) m = (m << 32) | limbs_[i];
    if (m > (u128(1) << 126)) fail(ErrorCode::OutOfRange, "BigInt::to_i128: too large");
    return negative_ ? -i128(m) : i128(m);
}

} // namespace twistlab
