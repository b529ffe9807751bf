#pragma once

// riemann-hilbert factorization (a, b) = (a-, b-)(a+, b+) of a B_eps pair,
// computed as the fixed point of the contraction
//   (A, B) <- ((1 - P_D((b/a) B*))*,  P_D((b/a) A))
// jacobi-style from (1, 0), then normalized by sqrt(A(inf)).  the plus
// factor carries b+ on n >= 0 and a+ on n <= 0, exactly, because the
// projections are enforced spectrally each sweep; the minus factor is the
// pointwise quotient of the input by the plus factor.

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qsphase/circle_function.hpp"
#include "qsphase/errors.hpp"
#include "qsphase/fft.hpp"
#include "qsphase/outer.hpp"
#include "qsphase/su2.hpp"

namespace qsphase {

namespace detail {

// in-place projection onto nonnegative frequencies, samples -> samples
inline void project_disk_samples(std::vector<cplx>& v,
                                 const std::vector<cplx>& roots) {
  fft_pow2(v, roots, false);
  std::fill(v.begin() + std::ptrdiff_t(v.size() / 2), v.end(), cplx(0.0, 0.0));
  fft_pow2(v, roots, true);
  const double scale = 1.0 / double(v.size());
  for (cplx& c : v) c *= scale;
}

}  // namespace detail

struct RHOptions {
  double tol_fp = 1e-12;
  int max_iter = 0;  // 0: ceil(log tol / log(1 - eta*eps)) + 16
};

struct RHFactors {
  SU2Pair minus;  // b- supported in n <= -1
  SU2Pair plus;   // a+ in n <= 0, b+ in n >= 0
  double a_plus_infinity = 0.0;
  int iterations = 0;
  std::vector<double> residuals;       // successive-difference H norms
  double contraction_rate = 0.0;       // max filtered residual ratio
  double support_defect = 0.0;         // minus-factor mass outside its window
  double reproduction_defect = 0.0;    // max |minus*plus - input| on the grid
};

inline RHFactors rh_factorize(const BEpsilonPair& p, RHOptions opt = {}) {
  const CircleGrid& grid = p.pair.a.grid();
  const std::size_t n = grid.size();
  const std::vector<cplx>& roots = grid.nodes();

  std::vector<cplx> r(n);
  double rho = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    r[j] = p.pair.b.sample(j) / p.pair.a.sample(j);
    rho = std::max(rho, std::abs(r[j]));
  }
  if (rho >= 1.0 - 1e-12)
    throw ContractionBroken("sup |b/a| = " + std::to_string(rho) +
                            " leaves no contraction margin");

  int max_iter = opt.max_iter;
  if (max_iter <= 0) {
    const double rate = 1.0 - contraction_eta * p.epsilon;
    max_iter =
        int(std::ceil(std::log(opt.tol_fp) / std::log(std::min(rate, rho)))) +
        16;
  }

  std::vector<cplx> A(n, cplx(1.0, 0.0)), B(n, cplx(0.0, 0.0));
  std::vector<cplx> ta(n), tb(n);
  std::vector<double> residuals;
  bool converged = false;
  int iterations = 0;
  while (iterations < max_iter) {
    for (std::size_t j = 0; j < n; ++j) ta[j] = r[j] * std::conj(B[j]);
    detail::project_disk_samples(ta, roots);
    for (std::size_t j = 0; j < n; ++j) tb[j] = r[j] * A[j];
    detail::project_disk_samples(tb, roots);

    double da = 0.0, db = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const cplx na = std::conj(1.0 - ta[j]);
      da += std::norm(na - A[j]);
      db += std::norm(tb[j] - B[j]);
      A[j] = na;
      B[j] = tb[j];
    }
    ++iterations;
    const double res = std::sqrt((da + db) / double(n));
    if (!residuals.empty() && residuals.back() > 1e-13 &&
        res > residuals.back() * (1.0 + 1e-9))
      throw ContractionBroken(
          "fixed-point residual grew from " + std::to_string(residuals.back()) +
          " to " + std::to_string(res) + " at sweep " +
          std::to_string(iterations));
    residuals.push_back(res);
    if (res <= opt.tol_fp) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw NoConvergence("fixed point above tol " + std::to_string(opt.tol_fp) +
                        " after " + std::to_string(max_iter) + " sweeps");

  double rate = 0.0;
  for (std::size_t k = 1; k < residuals.size(); ++k)
    if (residuals[k - 1] > 1e-13)
      rate = std::max(rate, residuals[k] / residuals[k - 1]);

  // normalize by sqrt(A(inf)); A has spectrum in n <= 0, so A(inf) is the
  // plain sample mean
  cplx a_inf(0.0, 0.0);
  for (const cplx& c : A) a_inf += c;
  a_inf /= double(n);
  if (!(a_inf.real() > 1e-8) || std::abs(a_inf.imag()) > 1e-6)
    throw DegenerateA("A(inf) = " + std::to_string(a_inf.real()) + " + " +
                      std::to_string(a_inf.imag()) + "i not positive real");
  const double sq = std::sqrt(a_inf.real());
  for (std::size_t j = 0; j < n; ++j) {
    A[j] /= sq;
    B[j] /= sq;
  }

  SU2Pair plus{CircleFunction::from_samples(grid, std::move(A)),
               CircleFunction::from_samples(grid, std::move(B))};
  // minus = input * plus^{-1}, with pair inverse (a, b)^{-1} = (a*, -b)
  SU2Pair minus = su2_product(
      p.pair, SU2Pair{star(plus.a), scaled(plus.b, cplx(-1.0, 0.0))});

  RHFactors out{std::move(minus), std::move(plus), sq, iterations,
                std::move(residuals), rate, 0.0, 0.0};

  // diagnostics: minus-factor support leakage and pointwise reproduction
  double leak = 0.0;
  for (std::size_t k = 0; k < n / 2; ++k) {
    leak += std::norm(out.minus.b.bins()[k]);            // b- mass at n >= 0
    if (k >= 1) leak += std::norm(out.minus.a.bins()[k]);  // a- mass at n > 0
  }
  out.support_defect = std::sqrt(leak);
  const SU2Pair check = su2_product(out.minus, out.plus);
  out.reproduction_defect =
      std::max(detail::max_sample_dist(check.a, p.pair.a.samples()),
               detail::max_sample_dist(check.b, p.pair.b.samples()));
  return out;
}

inline double contraction_rate(const BEpsilonPair& p, RHOptions opt = {}) {
  return rh_factorize(p, opt).contraction_rate;
}

}  // namespace qsphase
