#pragma once

// brute-force multilinear expansion of the nonlinear fourier series:
//   T_n(F)(z) = sum over j_1 < ... < j_n of the alternating products
//   F_{j_k} z^{j_k} (k odd) and -conj(F_{j_k}) z^{-j_k} (k even),
// plus the l^1 continuity probes built on it.  everything here is an oracle:
// small caps, no cleverness, kept independent of the recursion product so the
// two can check each other.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qsphase/circle_function.hpp"
#include "qsphase/coeff_sequence.hpp"
#include "qsphase/errors.hpp"
#include "qsphase/grid.hpp"
#include "qsphase/su2.hpp"

namespace qsphase {

inline CircleFunction multilinear_T(int n, const CoeffSequence& F,
                                    const CircleGrid& grid) {
  if (n < 0 || n > 5)
    throw OracleTooLarge("multilinear order " + std::to_string(n) +
                         " outside [0, 5]");
  if (F.width() > 32)
    throw OracleTooLarge("multilinear width " + std::to_string(F.width()) +
                         " exceeds 32");
  if (std::size_t(n) * std::size_t(F.max_abs_index()) >=
      std::size_t(grid.size() / 2))
    throw GridTooCoarse("grid too small for the multilinear frequency range");

  std::vector<cplx> bins(grid.size(), cplx(0.0, 0.0));
  // depth-first over increasing index tuples; slot k (1-based) contributes
  // F_j z^j for odd k and -conj(F_j) z^{-j} for even k
  std::function<void(int, int, cplx, int)> rec = [&](int start, int filled,
                                                     cplx prod, int freq) {
    if (filled == n) {
      bins[detail::bin_of_freq(freq, grid.size())] += prod;
      return;
    }
    for (int j = start; j <= F.hi(); ++j) {
      const cplx f = F.at(j);
      if (f == cplx(0.0, 0.0)) continue;
      const bool odd_slot = (filled % 2 == 0);
      rec(j + 1, filled + 1, prod * (odd_slot ? f : -std::conj(f)),
          freq + (odd_slot ? j : -j));
    }
  };
  if (!F.empty() || n == 0) rec(F.empty() ? 0 : F.lo(), 0, cplx(1.0, 0.0), 0);
  return CircleFunction::from_bins(grid, std::move(bins));
}

struct MultilinearNlfs {
  SU2Pair pair;
  double tail_bound;  // sum_{k > n_max} ||F||_1^k / k!
};

// partial sums a ~ C(F) sum T_{2m}, b ~ C(F) sum T_{2m+1} over total order
// <= n_max, with the factorial tail of the omitted orders reported
inline MultilinearNlfs nlfs_via_multilinear(const CoeffSequence& F, int n_max,
                                            const CircleGrid& grid) {
  const double R = F.norm_l1();
  if (R > 0.5)
    throw OracleTooLarge("multilinear oracle wants ||F||_1 <= 0.5, got " +
                         std::to_string(R));

  double cf = 1.0;
  for (const cplx& f : F.entries()) cf /= std::sqrt(1.0 + std::norm(f));

  std::vector<cplx> a(grid.size(), cplx(0.0, 0.0)), b = a;
  for (int n = 0; n <= n_max; ++n) {
    const CircleFunction t = multilinear_T(n, F, grid);
    auto& dst = (n % 2 == 0) ? a : b;
    for (std::size_t j = 0; j < grid.size(); ++j) dst[j] += cf * t.sample(j);
  }

  // exact tail of the exponential series beyond n_max
  double tail = std::exp(R), term = 1.0;
  for (int k = 0; k <= n_max; ++k) {
    tail -= term;
    term *= R / double(k + 1);
  }

  return {{CircleFunction::from_samples(grid, std::move(a)),
           CircleFunction::from_samples(grid, std::move(b))},
          std::max(tail, 0.0)};
}

struct WienerProbe {
  double f_dist_l1;      // ||F - F'||_1
  double b_dist_A;       // ||b - b'||_A, the l^1 norm of coefficient diffs
  double forward_bound;  // e^R ||F - F'||_1
  bool reverse_checked;  // true iff R <= 0.36
  double reverse_bound;  // 2 ||b - b'||_A when checked
};

// both l^1 continuity bounds between forward series; throws if a bound that
// the theory guarantees fails, since that means a numerical defect upstream
inline WienerProbe wiener_lipschitz_probe(const CoeffSequence& F,
                                          const CoeffSequence& G, double R) {
  if (F.norm_l1() > R + 1e-12 || G.norm_l1() > R + 1e-12)
    throw Error("wiener probe: sequence l1 norm exceeds the stated radius");

  const int lo = std::min(F.empty() ? 0 : F.lo(), G.empty() ? 0 : G.lo());
  const int hi = std::max(F.empty() ? 0 : F.hi(), G.empty() ? 0 : G.hi());
  const int maxabs = std::max(std::abs(lo), std::abs(hi)) + 1;
  std::size_t n = 64;
  while (n < 8 * std::size_t(maxabs)) n <<= 1;
  const CircleGrid grid(n);

  const SU2Pair p = nlfs_finite(F, grid), q = nlfs_finite(G, grid);

  double f_dist = 0.0;
  for (int k = std::min(lo, 0); k <= std::max(hi, 0); ++k)
    f_dist += std::abs(F.at(k) - G.at(k));

  double b_dist = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k)
    b_dist += std::abs(p.b.bins()[k] - q.b.bins()[k]);

  WienerProbe probe{f_dist, b_dist, std::exp(R) * f_dist, R <= 0.36,
                    2.0 * b_dist};
  if (probe.b_dist_A > probe.forward_bound + 1e-12)
    throw Error("wiener forward bound violated: " +
                std::to_string(probe.b_dist_A) + " > " +
                std::to_string(probe.forward_bound));
  if (probe.reverse_checked && probe.f_dist_l1 > probe.reverse_bound + 1e-12)
    throw Error("wiener reverse bound violated: " +
                std::to_string(probe.f_dist_l1) + " > " +
                std::to_string(probe.reverse_bound));
  return probe;
}

}  // namespace qsphase
