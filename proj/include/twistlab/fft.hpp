// fft.hpp -- complex transforms: radix-2 FFT, chirp (Bluestein) DFT of
// arbitrary length, and arbitrary-length cyclic convolution.
//
// Conventions: dft(sign=+1) computes X[k] = sum_n x[n] exp(+2*pi*i*nk/N),
// sign=-1 the conjugate kernel.  No normalization is applied.
#pragma once

#include "twistlab/common.hpp"

#include <vector>

namespace twistlab {

// In-place radix-2 FFT; a.size() must be a power of two.
void fft_pow2(std::vector<cplx>& a, int sign);

// Arbitrary-length DFT by chirp decomposition (exact length n, any n >= 1).
std::vector<cplx> dft_bluestein(const std::vector<cplx>& x, int sign);

// Reference O(n^2) DFT, the oracle for the fast path.
std::vector<cplx> dft_direct(const std::vector<cplx>& x, int sign);

// Cyclic convolution c[k] = sum_j a[j] b[(k-j) mod n], arbitrary n.
std::vector<cplx> cyclic_convolution_fft(const std::vector<cplx>& a,
                                         const std::vector<cplx>& b);
std::vector<cplx> cyclic_convolution_direct(const std::vector<cplx>& a,
                                            const std::vector<cplx>& b);

} // namespace twistlab
