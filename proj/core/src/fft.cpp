#include "nash/fft.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "nash/error.hpp"

namespace nash {

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void fft(std::vector<std::complex<double>>& x) {
  const std::size_t n = x.size();
  if (n == 0 || (n & (n - 1)) != 0) throw Error(Errc::InvalidArgument, "fft length must be a power of two");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    for (std::size_t k = 0; k < half; ++k) {
      // Twiddles computed directly rather than by recurrence to keep the
      // rounding error independent of the transform length.
      const std::complex<double> wk = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k) / len);
      for (std::size_t s = 0; s < n; s += len) {
        const std::complex<double> u = x[s + k];
        const std::complex<double> v = x[s + k + half] * wk;
        x[s + k] = u + v;
        x[s + k + half] = u - v;
      }
    }
  }
}

}  // namespace nash
