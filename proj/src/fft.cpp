#include "twistlab/fft.hpp"

#include <cmath>

namespace twistlab {

namespace {

constexpr double TWO_PI = 6.283185307179586476925286766559;

std::size_t next_pow2(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

} // namespace

void fft_pow2(std::vector<cplx>& a, int sign) {
    const std::size_t n = a.size();
    if (n <= 1) return;
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = sign * TWO_PI / double(len);
        cplx wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                cplx u = a[i + j];
                cplx v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

std::vector<cplx> dft_direct(const std::vector<cplx>& x, int sign) {
    const std::size_t n = x.size();
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc(0.0, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            double ang = sign * TWO_PI * double(u64(j) * k % n) / double(n);
            acc += x[j] * cplx(std::cos(ang), std::sin(ang));
        }
        out[k] = acc;
    }
    return out;
}

std::vector<cplx> dft_bluestein(const std::vector<cplx>& x, int sign) {
    const std::size_t n = x.size();
    if (n == 0) return {};
    if (n == 1) return x;
    // nk = (n^2 + k^2 - (k-n)^2)/2, so the kernel splits into chirps of
    // period 2n.  Chirp exponents are reduced mod 2n in integers first.
    const std::size_t m = next_pow2(2 * n - 1);
    const u64 period = 2 * u64(n);

    std::vector<cplx> chirp(n);
    for (std::size_t k = 0; k < n; ++k) {
        u64 e = (u128(k) * k) % period;
        double ang = sign * TWO_PI * double(e) / double(period);
        chirp[k] = cplx(std::cos(ang), std::sin(ang));
    }

    std::vector<cplx> a(m, cplx(0, 0)), b(m, cplx(0, 0));
    for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * chirp[k];
    b[0] = std::conj(chirp[0]);
    for (std::size_t k = 1; k < n; ++k) {
        b[k] = std::conj(chirp[k]);
        b[m - k] = b[k];
    }

    fft_pow2(a, +1);
    fft_pow2(b, +1);
    for (std::size_t k = 0; k < m; ++k) a[k] *= b[k];
    fft_pow2(a, -1);

    std::vector<cplx> out(n);
    const double scale = 1.0 / double(m);
    for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * chirp[k] * scale;
    return out;
}

std::vector<cplx> cyclic_convolution_direct(const std::vector<cplx>& a,
                                            const std::vector<cplx>& b) {
    const std::size_t n = a.size();
    if (b.size() != n) fail(ErrorCode::InvalidParams, "cyclic convolution: length mismatch");
    std::vector<cplx> c(n, cplx(0, 0));
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc(0, 0);
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t i = k >= j ? k - j : k + n - j;
            acc += a[j] * b[i];
        }
        c[k] = acc;
    }
    return c;
}

std::vector<cplx> cyclic_convolution_fft(const std::vector<cplx>& a,
                                         const std::vector<cplx>& b) {
    const std::size_t n = a.size();
    if (b.size() != n) fail(ErrorCode::InvalidParams, "cyclic convolution: length mismatch");
    if (n == 0) return {};
    // cyclic conv = IDFT(DFT(a) .* DFT(b)) at exact length n
    std::vector<cplx> fa = dft_bluestein(a, -1);
    std::vector<cplx> fb = dft_bluestein(b, -1);
    for (std::size_t k = 0; k < n; ++k) fa[k] *= fb[k];
    std::vector<cplx> c = dft_bluestein(fa, +1);
    const double scale = 1.0 / double(n);
    for (auto& z : c) z *= scale;
    return c;
}

} // namespace twistlab
