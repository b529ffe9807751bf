#pragma once

// target signals f on x in [0, 1], stored as samples at x_j = cos(pi j / N)
// over the full theta grid with the even extension f(-x) = f(x) baked in.
// every signal carries its margin epsilon: sup |f| <= 2^{-1/2} - epsilon.

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qsphase/errors.hpp"
#include "qsphase/grid.hpp"
#include "qsphase/outer.hpp"

namespace qsphase {

namespace detail {

// Clenshaw for sum c_k T_k(x)
inline double clenshaw(const std::vector<double>& c, double x) {
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) {
    const double b = 2.0 * x * b1 - b2 + c[k];
    b2 = b1;
    b1 = b;
  }
  return c.empty() ? 0.0 : c[0] + x * b1 - b2;
}

}  // namespace detail

class SignalSamples {
 public:
  // f given as a function of x in [0, 1]; sampled once per distinct |x_j|
  // and mirrored so values[j] == values[N-j] holds exactly
  template <class F>
  static SignalSamples from_function(const CircleGrid& grid, F&& f,
                                     double epsilon = -1.0) {
    const std::size_t n = grid.size();
    std::vector<double> v(n);
    for (std::size_t j = 0; j <= n / 2; ++j)
      v[j] = double(f(std::abs(grid.abscissa(j))));
    for (std::size_t j = n / 2 + 1; j < n; ++j) v[j] = v[n - j];
    return SignalSamples(grid, std::move(v), epsilon);
  }

  // raw samples over the full grid; must already respect the even extension
  static SignalSamples from_samples(const CircleGrid& grid,
                                    std::vector<double> values,
                                    double epsilon = -1.0) {
    if (values.size() != grid.size())
      throw GridMismatch("got " + std::to_string(values.size()) +
                         " samples for a grid of " +
                         std::to_string(grid.size()));
    const std::size_t n = values.size();
    double skew = 0.0;
    for (std::size_t j = 1; j < n; ++j)
      skew = std::max(skew, std::abs(values[j] - values[n - j]));
    if (skew > 1e-9)
      throw SymmetryViolation("samples break the even extension by " +
                              std::to_string(skew));
    for (std::size_t j = 1; j < n - j; ++j) {  // make the mirror exact
      const double avg = 0.5 * (values[j] + values[n - j]);
      values[j] = avg;
      values[n - j] = avg;
    }
    return SignalSamples(grid, std::move(values), epsilon);
  }

  // f(x) = sum_k coeffs[k] T_k(x) on [0, 1], then evenly extended
  static SignalSamples from_chebyshev(const CircleGrid& grid,
                                      const std::vector<double>& coeffs,
                                      double epsilon = -1.0) {
    return from_function(
        grid, [&coeffs](double x) { return detail::clenshaw(coeffs, x); },
        epsilon);
  }

  const CircleGrid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  double value(std::size_t j) const { return values_[j]; }
  std::size_t size() const { return values_.size(); }
  double epsilon() const { return epsilon_; }
  double sup() const { return sup_; }

 private:
  SignalSamples(const CircleGrid& grid, std::vector<double> v, double eps)
      : grid_(grid), values_(std::move(v)) {
    for (double x : values_) {
      if (!std::isfinite(x))
        throw NonRealInput("signal sample is not a finite real");
      sup_ = std::max(sup_, std::abs(x));
    }
    if (eps <= 0.0) eps = inv_sqrt2 - sup_;  // default margin
    if (eps <= 1e-6)
      throw SignalTooLarge("sup |f| = " + std::to_string(sup_) +
                           " leaves margin " + std::to_string(eps) +
                           " below the 2^(-1/2) threshold");
    if (sup_ > inv_sqrt2 - eps + 1e-12)
      throw SignalTooLarge("sup |f| = " + std::to_string(sup_) +
                           " exceeds 2^(-1/2) - " + std::to_string(eps));
    epsilon_ = eps;
  }

  CircleGrid grid_;
  std::vector<double> values_;
  double epsilon_ = 0.0;
  double sup_ = 0.0;
};

}  // namespace qsphase
