#pragma once

#include <complex>
#include <vector>

namespace nash {

/// In-place radix-2 DFT, X_k = sum_n x_n e^{-2 pi i k n / N}. N must be a
/// power of two.
void fft(std::vector<std::complex<double>>& x);

/// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

}  // namespace nash
