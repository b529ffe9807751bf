#pragma once

// complex function sampled on a CircleGrid together with its fourier
// coefficients.  convention: c_n = (1/N) sum_j g(z_j) z_j^{-n}, frequencies
// n in [-N/2, N/2), nyquist mode on the negative side.  both views are kept
// materialized (one fft at construction); values are immutable afterwards,
// so copies are cheap to reason about and safe to share across threads.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qsphase/errors.hpp"
#include "qsphase/fft.hpp"
#include "qsphase/grid.hpp"

namespace qsphase {

namespace detail {

// fft bin of signed frequency n, and back
inline std::size_t bin_of_freq(int n, std::size_t size) {
  return n >= 0 ? std::size_t(n) : size - std::size_t(-n);
}
inline int freq_of_bin(std::size_t k, std::size_t size) {
  return k < size / 2 ? int(k) : int(k) - int(size);
}

}  // namespace detail

class CircleFunction {
 public:
  CircleFunction() = delete;

  static CircleFunction from_samples(const CircleGrid& grid,
                                     std::vector<cplx> samples) {
    if (samples.size() != grid.size())
      throw GridMismatch("sample count " + std::to_string(samples.size()) +
                         " != grid size " + std::to_string(grid.size()));
    std::vector<cplx> bins = samples;
    detail::fft_pow2(bins, grid.nodes(), false);
    const double scale = 1.0 / double(grid.size());
    for (auto& c : bins) c *= scale;
    return CircleFunction(grid, std::move(samples), std::move(bins));
  }

  // bins in fft order: bins[k] is the coefficient at frequency k for
  // k < N/2 and at k - N otherwise
  static CircleFunction from_bins(const CircleGrid& grid,
                                  std::vector<cplx> bins) {
    if (bins.size() != grid.size())
      throw GridMismatch("bin count " + std::to_string(bins.size()) +
                         " != grid size " + std::to_string(grid.size()));
    std::vector<cplx> samples = bins;
    detail::fft_pow2(samples, grid.nodes(), true);
    return CircleFunction(grid, std::move(samples), std::move(bins));
  }

  static CircleFunction from_coeffs(
      const CircleGrid& grid, const std::vector<std::pair<int, cplx>>& coeffs) {
    std::vector<cplx> bins(grid.size(), cplx(0.0, 0.0));
    for (const auto& [n, c] : coeffs) {
      if (n < grid.min_freq() || n > grid.max_freq())
        throw DegreeOutOfRange("coefficient index " + std::to_string(n) +
                               " outside [" + std::to_string(grid.min_freq()) +
                               ", " + std::to_string(grid.max_freq()) + "]");
      bins[detail::bin_of_freq(n, grid.size())] += c;
    }
    return from_bins(grid, std::move(bins));
  }

  static CircleFunction constant(const CircleGrid& grid, cplx value) {
    return CircleFunction(grid, std::vector<cplx>(grid.size(), value),
                          [&] {
                            std::vector<cplx> b(grid.size(), cplx(0.0, 0.0));
                            b[0] = value;
                            return b;
                          }());
  }

  const CircleGrid& grid() const { return grid_; }
  std::size_t size() const { return grid_.size(); }
  const std::vector<cplx>& samples() const { return samples_; }
  cplx sample(std::size_t j) const { return samples_[j]; }
  const std::vector<cplx>& bins() const { return bins_; }

  cplx coeff(int n) const {
    if (n < grid_.min_freq() || n > grid_.max_freq())
      throw DegreeOutOfRange("coefficient index " + std::to_string(n) +
                             " outside the grid window");
    return bins_[detail::bin_of_freq(n, grid_.size())];
  }

 private:
  CircleFunction(const CircleGrid& grid, std::vector<cplx> samples,
                 std::vector<cplx> bins)
      : grid_(grid), samples_(std::move(samples)), bins_(std::move(bins)) {}

  CircleGrid grid_;
  std::vector<cplx> samples_;
  std::vector<cplx> bins_;

  friend CircleFunction star(const CircleFunction&);
  friend CircleFunction scaled(const CircleFunction&, cplx);
};

// ---- coefficient views -----------------------------------------------------

inline std::vector<std::pair<int, cplx>> to_coeffs(const CircleFunction& g) {
  std::vector<std::pair<int, cplx>> out;
  out.reserve(g.size());
  for (int n = g.grid().min_freq(); n <= g.grid().max_freq(); ++n)
    out.emplace_back(n, g.bins()[detail::bin_of_freq(n, g.size())]);
  return out;
}

// ---- cauchy projections and the hilbert transform ---------------------------

// P_D: keep n >= 0 (hardy space of the disk)
inline CircleFunction cauchy_project_disk(const CircleFunction& g) {
  std::vector<cplx> bins = g.bins();
  for (std::size_t k = bins.size() / 2; k < bins.size(); ++k)
    bins[k] = cplx(0.0, 0.0);
  return CircleFunction::from_bins(g.grid(), std::move(bins));
}

// P_{D*}: keep n <= 0 (hardy space of the exterior disk, nyquist included)
inline CircleFunction cauchy_project_disk_star(const CircleFunction& g) {
  std::vector<cplx> bins = g.bins();
  for (std::size_t k = 1; k < bins.size() / 2; ++k) bins[k] = cplx(0.0, 0.0);
  return CircleFunction::from_bins(g.grid(), std::move(bins));
}

// multiplier -i sgn(n) on the coefficients, so H(Re z^n) = Im z^n and
// a real g maps to a real Hg.  the nyquist bin has no +N/2 partner in the
// window, so the only multiplier value consistent with a real output is 0;
// the bandwidth discipline used before every nonlinear step keeps that bin
// empty anyway.
inline CircleFunction hilbert_transform(const CircleFunction& g) {
  double worst = 0.0;
  for (const cplx& s : g.samples())
    worst = std::max(worst, std::abs(s.imag()));
  if (worst > 1e-12)
    throw NonRealInput("hilbert transform input has imaginary part " +
                       std::to_string(worst));
  const std::size_t n = g.size();
  std::vector<cplx> bins = g.bins();
  bins[0] = cplx(0.0, 0.0);
  bins[n / 2] = cplx(0.0, 0.0);
  for (std::size_t k = 1; k < n / 2; ++k) {
    bins[k] *= cplx(0.0, -1.0);
    bins[n - k] *= cplx(0.0, 1.0);
  }
  return CircleFunction::from_bins(g.grid(), std::move(bins));
}

inline cplx mean_value(const CircleFunction& g) { return g.bins()[0]; }

// a*(z) = conj(a(conj(1/z))): pointwise conjugation on the circle,
// c_n -> conj(c_{-n}) on the coefficients.  both views permute directly,
// no transform needed.
inline CircleFunction star(const CircleFunction& g) {
  const std::size_t n = g.size();
  std::vector<cplx> samples(n), bins(n);
  for (std::size_t j = 0; j < n; ++j) samples[j] = std::conj(g.samples()[j]);
  for (std::size_t k = 0; k < n; ++k)
    bins[k] = std::conj(g.bins()[k == 0 ? 0 : n - k]);
  return CircleFunction(g.grid(), std::move(samples), std::move(bins));
}

// ---- small helpers used throughout -----------------------------------------

// scalar multiple; both representations scale linearly, no transform needed
inline CircleFunction scaled(const CircleFunction& g, cplx c) {
  const std::size_t n = g.size();
  std::vector<cplx> samples(n), bins(n);
  for (std::size_t j = 0; j < n; ++j) {
    samples[j] = c * g.samples()[j];
    bins[j] = c * g.bins()[j];
  }
  return CircleFunction(g.grid(), std::move(samples), std::move(bins));
}

inline double sup_abs(const CircleFunction& g) {
  double m = 0.0;
  for (const cplx& s : g.samples()) m = std::max(m, std::abs(s));
  return m;
}

// sqrt of the mean of |g|^2 over the grid, i.e. the L2(T) norm under the
// normalized arc measure
inline double l2_mean_norm(const CircleFunction& g) {
  double acc = 0.0;
  for (const cplx& s : g.samples()) acc += std::norm(s);
  return std::sqrt(acc / double(g.size()));
}

inline double l2_mean_dist(const CircleFunction& g, const CircleFunction& h) {
  if (g.grid() != h.grid()) throw GridMismatch("l2 distance across grids");
  double acc = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j)
    acc += std::norm(g.sample(j) - h.sample(j));
  return std::sqrt(acc / double(g.size()));
}

}  // namespace qsphase
