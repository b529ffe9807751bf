#pragma once

// iterative radix-2 transform, power-of-two sizes only (the grid type never
// produces anything else).  twiddles are read from a precomputed root table
// (the grid's node table), so each one is a direct polar() evaluation and the
// rounding error stays at O(log n) ulps instead of the O(n) drift a
// w *= wlen recurrence would give.  no scaling in either direction; callers
// apply their own 1/N.

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace qsphase::detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// in place.  roots[k] = exp(2 pi i k / n); forward uses the conjugate roots,
// so forward on samples computes sum_j x_j z_j^{-k} (the unnormalized
// analysis sum) and inverse computes sum_k c_k z_j^{+k} (synthesis).
inline void fft_pow2(std::vector<std::complex<double>>& x,
                     const std::vector<std::complex<double>>& roots,
                     bool inverse) {
  const std::size_t n = x.size();
  if (n < 2) return;

  // bit-reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        std::complex<double> w = roots[k * stride];
        if (!inverse) w = std::conj(w);
        const std::complex<double> u = x[i + k];
        const std::complex<double> v = x[i + k + half] * w;
        x[i + k] = u + v;
        x[i + k + half] = u - v;
      }
    }
  }
}

}  // namespace qsphase::detail
