#pragma once

// SU(2) pair algebra on the circle and the forward nonlinear fourier series
// of finitely supported sequences.  a pair (a, b) stands for the matrix
// [[a, b], [-b*, a*]]; on the circle the star is plain conjugation, so
// pointwise products close on pairs of sample values:
//   (a, b)(c, d) = (ac - b conj(d), ad + b conj(c)).

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

namespace qsphase {

struct SU2Pair {
  CircleFunction a, b;
};

struct SU2Defects {
  double unitarity;    // max_j | |a_j|^2 + |b_j|^2 - 1 |
  double mean_a_imag;  // |Im mean(a)|
};

inline SU2Defects su2_defects(const SU2Pair& p) {
  double worst = 0.0;
  for (std::size_t j = 0; j < p.a.size(); ++j)
    worst = std::max(worst, std::abs(std::norm(p.a.sample(j)) +
                                     std::norm(p.b.sample(j)) - 1.0));
  return {worst, std::abs(mean_value(p.a).imag())};
}

inline SU2Pair su2_identity(const CircleGrid& grid) {
  return {CircleFunction::constant(grid, cplx(1.0, 0.0)),
          CircleFunction::constant(grid, cplx(0.0, 0.0))};
}

inline SU2Pair su2_product(const SU2Pair& p, const SU2Pair& q) {
  if (p.a.grid() != q.a.grid())
    throw GridMismatch("su2_product operands on different grids");
  const std::size_t n = p.a.size();
  std::vector<cplx> a(n), b(n);
  for (std::size_t j = 0; j < n; ++j) {
    const cplx pa = p.a.sample(j), pb = p.b.sample(j);
    const cplx qa = q.a.sample(j), qb = q.b.sample(j);
    a[j] = pa * qa - pb * std::conj(qb);
    b[j] = pa * qb + pb * std::conj(qa);
  }
  return {CircleFunction::from_samples(p.a.grid(), std::move(a)),
          CircleFunction::from_samples(p.a.grid(), std::move(b))};
}

// ---- forward series ----------------------------------------------------------

// ordered product over n = lo..hi of (1+|F_n|^2)^{-1/2} (1, F_n z^n),
// evaluated pointwise at every node.  z_j^n is a node-table lookup since
// z_j^n = z_{(j n) mod N}.
inline SU2Pair nlfs_finite(const CoeffSequence& F, const CircleGrid& grid) {
  const std::size_t N = grid.size();
  if (!F.empty() && N < 4 * F.width())
    throw GridTooCoarse("grid size " + std::to_string(N) +
                        " < 4 x window width " + std::to_string(F.width()));

  std::vector<cplx> a(N, cplx(1.0, 0.0)), b(N, cplx(0.0, 0.0));
  if (!F.empty()) {
    const auto& nodes = grid.nodes();
    std::vector<double> kappa(F.width());
    for (std::size_t i = 0; i < F.width(); ++i)
      kappa[i] = 1.0 / std::sqrt(1.0 + std::norm(F.entries()[i]));

    for (std::size_t j = 0; j < N; ++j) {
      cplx alpha(1.0, 0.0), beta(0.0, 0.0);
      for (int n = F.lo(); n <= F.hi(); ++n) {
        const std::size_t i = std::size_t(n - F.lo());
        long long idx = (static_cast<long long>(j) * n) % (long long)(N);
        if (idx < 0) idx += (long long)(N);
        const cplx d = F.entries()[i] * nodes[std::size_t(idx)];
        const cplx na = kappa[i] * (alpha - beta * std::conj(d));
        const cplx nb = kappa[i] * (alpha * d + beta);
        alpha = na;
        beta = nb;
      }
      a[j] = alpha;
      b[j] = beta;
    }
  }
  return {CircleFunction::from_samples(grid, std::move(a)),
          CircleFunction::from_samples(grid, std::move(b))};
}

// ---- plancherel ---------------------------------------------------------------

struct PlancherelSides {
  double lhs;  // sum log(1 + |F_n|^2)
  double rhs;  // -mean_j log(1 - |b(z_j)|^2)
};

inline PlancherelSides plancherel_finite(const CoeffSequence& F,
                                         const CircleGrid& grid) {
  const SU2Pair p = nlfs_finite(F, grid);
  double lhs = 0.0;
  for (const cplx& f : F.entries()) lhs += std::log1p(std::norm(f));
  double rhs = 0.0;
  for (const cplx& bj : p.b.samples())
    rhs -= std::log(std::max(1.0 - std::norm(bj), 1e-300));
  rhs /= double(grid.size());
  return {lhs, rhs};
}

// ---- symmetries ---------------------------------------------------------------

// a transformed sequence plus a checker: the checker forward-evaluates the
// original and the transformed sequence on a grid and returns the largest
// deviation from the predicted transform of (a, b).
struct SymmetryProbe {
  CoeffSequence sequence;
  std::function<double(const CircleGrid&)> deviation;
};

namespace detail {

inline double max_sample_dist(const CircleFunction& f,
                              const std::vector<cplx>& want) {
  double worst = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j)
    worst = std::max(worst, std::abs(f.sample(j) - want[j]));
  return worst;
}

}  // namespace detail

// H_n = F_{n-1}: predicted transform (a(z), z b(z))
inline SymmetryProbe symmetry_shift(const CoeffSequence& F) {
  CoeffSequence H = F.empty() ? F : CoeffSequence(F.lo() + 1, F.entries());
  auto deviation = [F, H](const CircleGrid& grid) {
    const SU2Pair p = nlfs_finite(F, grid), q = nlfs_finite(H, grid);
    const std::size_t n = grid.size();
    std::vector<cplx> wa(n), wb(n);
    for (std::size_t j = 0; j < n; ++j) {
      wa[j] = p.a.sample(j);
      wb[j] = grid.node(j) * p.b.sample(j);
    }
    return std::max(detail::max_sample_dist(q.a, wa),
                    detail::max_sample_dist(q.b, wb));
  };
  return {std::move(H), std::move(deviation)};
}

// H_n = c F_n with |c| = 1: predicted transform (a, c b)
inline SymmetryProbe symmetry_modulate(const CoeffSequence& F, cplx c) {
  if (std::abs(std::abs(c) - 1.0) > 1e-12)
    throw NonUnimodularFactor("modulation factor has |c| = " +
                              std::to_string(std::abs(c)));
  std::vector<cplx> entries = F.entries();
  for (cplx& e : entries) e *= c;
  CoeffSequence H = F.empty() ? F : CoeffSequence(F.lo(), std::move(entries));
  auto deviation = [F, H, c](const CircleGrid& grid) {
    const SU2Pair p = nlfs_finite(F, grid), q = nlfs_finite(H, grid);
    const std::size_t n = grid.size();
    std::vector<cplx> wa(n), wb(n);
    for (std::size_t j = 0; j < n; ++j) {
      wa[j] = p.a.sample(j);
      wb[j] = c * p.b.sample(j);
    }
    return std::max(detail::max_sample_dist(q.a, wa),
                    detail::max_sample_dist(q.b, wb));
  };
  return {std::move(H), std::move(deviation)};
}

// H_n = F_{-n}: predicted transform (a*(1/z), b(1/z)); on the grid that is
// a mirror of the sample index, with a conjugated (a*(1/z_j) = conj(a(z_-j)))
inline SymmetryProbe symmetry_reflect(const CoeffSequence& F) {
  CoeffSequence H;
  if (!F.empty()) {
    std::vector<cplx> entries(F.entries().rbegin(), F.entries().rend());
    H = CoeffSequence(-F.hi(), std::move(entries));
  }
  auto deviation = [F, H](const CircleGrid& grid) {
    const SU2Pair p = nlfs_finite(F, grid), q = nlfs_finite(H, grid);
    const std::size_t n = grid.size();
    std::vector<cplx> wa(n), wb(n);
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t m = j == 0 ? 0 : n - j;
      wa[j] = std::conj(p.a.sample(m));
      wb[j] = p.b.sample(m);
    }
    return std::max(detail::max_sample_dist(q.a, wa),
                    detail::max_sample_dist(q.b, wb));
  };
  return {std::move(H), std::move(deviation)};
}

// H_n = conj(F_n): predicted transform (a*(1/z), b*(1/z)) — mirror and
// conjugate both components
inline SymmetryProbe symmetry_conjugate(const CoeffSequence& F) {
  std::vector<cplx> entries = F.entries();
  for (cplx& e : entries) e = std::conj(e);
  CoeffSequence H = F.empty() ? F : CoeffSequence(F.lo(), std::move(entries));
  auto deviation = [F, H](const CircleGrid& grid) {
    const SU2Pair p = nlfs_finite(F, grid), q = nlfs_finite(H, grid);
    const std::size_t n = grid.size();
    std::vector<cplx> wa(n), wb(n);
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t m = j == 0 ? 0 : n - j;
      wa[j] = std::conj(p.a.sample(m));
      wb[j] = std::conj(p.b.sample(m));
    }
    return std::max(detail::max_sample_dist(q.a, wa),
                    detail::max_sample_dist(q.b, wb));
  };
  return {std::move(H), std::move(deviation)};
}

}  // namespace qsphase
