#pragma once

// uniform grid on the unit circle.  z_j = exp(2 pi i j / N) carries the
// fourier side; theta_j = pi j / N and x_j = cos(theta_j) carry the signal
// side.  with z = exp(2 i theta), theta sweeping [0, pi) walks the full
// circle exactly once, so signal samples and circle samples share one grid.

#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "qsphase/errors.hpp"
#include "qsphase/fft.hpp"

namespace qsphase {

using cplx = std::complex<double>;

class CircleGrid {
 public:
  explicit CircleGrid(std::size_t n) {
    if (!detail::is_pow2(n) || n < 8)
      throw GridTooCoarse("grid size must be a power of two >= 8, got " +
                          std::to_string(n));
    auto nodes = std::make_shared<std::vector<cplx>>(n);
    for (std::size_t j = 0; j < n; ++j)
      (*nodes)[j] =
          std::polar(1.0, 2.0 * std::numbers::pi * double(j) / double(n));
    nodes_ = std::move(nodes);
  }

  std::size_t size() const { return nodes_->size(); }
  const std::vector<cplx>& nodes() const { return *nodes_; }
  cplx node(std::size_t j) const { return (*nodes_)[j % size()]; }

  double angle(std::size_t j) const {
    return std::numbers::pi * double(j) / double(size());
  }
  double abscissa(std::size_t j) const { return std::cos(angle(j)); }

  // signed frequency window served by this grid, nyquist on the negative side
  int min_freq() const { return -int(size() / 2); }
  int max_freq() const { return int(size() / 2) - 1; }

  friend bool operator==(const CircleGrid& g, const CircleGrid& h) {
    return g.size() == h.size();
  }
  friend bool operator!=(const CircleGrid& g, const CircleGrid& h) {
    return !(g == h);
  }

 private:
  std::shared_ptr<const std::vector<cplx>> nodes_;
};

}  // namespace qsphase
