#pragma once

// layer stripping of a plus factor: peel F_n = b_n(0)/a_n*(0) one
// coefficient at a time via (1+|y|^2)^{-1/2} (1, -y) (a, b) followed by a
// downshift of b.  the full run works on raw sample vectors -- mean values
// are the only spectral data needed, so there is no transform inside the
// loop and each step costs O(N).

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qsphase/circle_function.hpp"
#include "qsphase/coeff_sequence.hpp"
#include "qsphase/errors.hpp"
#include "qsphase/su2.hpp"

namespace qsphase {

namespace detail {

inline cplx vec_mean(const std::vector<cplx>& v) {
  cplx acc(0.0, 0.0);
  for (const cplx& c : v) acc += c;
  return acc / double(v.size());
}

// one strip update on raw samples; returns the dropped zeroth coefficient
// of the shifted b, which vanishes in exact arithmetic
inline cplx strip_update(std::vector<cplx>& a, std::vector<cplx>& b,
                         const std::vector<cplx>& nodes, cplx y) {
  const double k = 1.0 / std::sqrt(1.0 + std::norm(y));
  const std::size_t n = a.size();
  for (std::size_t j = 0; j < n; ++j) {
    const cplx na = k * (a[j] + y * std::conj(b[j]));
    const cplx nb = k * (b[j] - y * std::conj(a[j]));
    a[j] = na;
    b[j] = nb;
  }
  const cplx mu = vec_mean(b);
  for (std::size_t j = 0; j < n; ++j) b[j] = (b[j] - mu) * std::conj(nodes[j]);
  return mu;
}

inline double sample_outerness_defect(const std::vector<cplx>& a) {
  double m = 0.0;
  for (const cplx& s : a) {
    const double r = std::abs(s);
    if (r <= 0.0) throw DegenerateA("zero sample in outerness check");
    m += std::log(r);
  }
  m /= double(a.size());
  const double c0 = std::abs(vec_mean(a));
  if (c0 <= 0.0) throw DegenerateA("vanishing mean in outerness check");
  return std::abs(m - std::log(c0));
}

}  // namespace detail

struct StripStep {
  cplx f0;
  SU2Pair next;
  double drift;  // |dropped zeroth coefficient|
};

inline StripStep layer_strip_step(const SU2Pair& plus) {
  if (plus.a.grid() != plus.b.grid())
    throw GridMismatch("pair components on different grids");
  const cplx a0 = mean_value(plus.a);
  if (std::abs(a0) < 1e-8)
    throw DegenerateA("|a(inf)| = " + std::to_string(std::abs(a0)) +
                      " too small to strip");
  const cplx y = mean_value(plus.b) / std::conj(a0);

  std::vector<cplx> a = plus.a.samples(), b = plus.b.samples();
  const cplx mu = detail::strip_update(a, b, plus.a.grid().nodes(), y);
  const CircleGrid& grid = plus.a.grid();
  return StripStep{y,
                   SU2Pair{CircleFunction::from_samples(grid, std::move(a)),
                           CircleFunction::from_samples(grid, std::move(b))},
                   std::abs(mu)};
}

struct StripResult {
  CoeffSequence sequence;  // F_n, n = 0..steps-1
  bool converged = false;
  double final_budget = 0.0;  // remaining -2 log a_n(inf)
  // -2 log a(inf) + mean log(1-|b|^2) of the input: ~0 for outer a, and
  // 2 sum log|z_0| over zeros of a beyond the circle otherwise.  stripping
  // inverts the ordered product either way; the gap says the outer-route
  // preimage (the one synthesis would produce) is a different sequence
  double plancherel_gap = 0.0;
  double drift = 0.0;            // accumulated dropped-coefficient mass
  double outerness_drift = 0.0;  // worst growth of the defect over the checks
  int steps = 0;
};

inline StripResult layer_strip_all(const SU2Pair& plus, int d_max,
                                   double tail_tol) {
  if (plus.a.grid() != plus.b.grid())
    throw GridMismatch("pair components on different grids");
  if (d_max < 0) throw DegreeOutOfRange("negative strip budget");
  const std::size_t n = plus.a.size();

  // one-time structural checks; the loop itself never transforms
  double neg_mass = 0.0;
  for (std::size_t k = n / 2; k < n; ++k) neg_mass += std::norm(plus.b.bins()[k]);
  neg_mass = std::sqrt(neg_mass);
  if (neg_mass > 1e-7)
    throw SymmetryViolation("b carries negative-index mass " +
                            std::to_string(neg_mass) +
                            "; not a plus factor");
  const cplx a_inf0 = mean_value(plus.a);
  if (!(a_inf0.real() > 0.0) ||
      std::abs(a_inf0.imag()) > 1e-8 * (1.0 + a_inf0.real()))
    throw NonPositiveAInfinity("a(inf) = " + std::to_string(a_inf0.real()) +
                               " + " + std::to_string(a_inf0.imag()) +
                               "i must be positive real");

  std::vector<cplx> a = plus.a.samples(), b = plus.b.samples();
  const std::vector<cplx>& nodes = plus.a.grid().nodes();

  // plus factors are pointwise SU(2); scrub any unitarity defect the input
  // carries (e.g. fixed-point truncation) or it floors the budget forever
  for (std::size_t j = 0; j < n; ++j) {
    const double s = 1.0 / std::sqrt(std::norm(a[j]) + std::norm(b[j]));
    a[j] *= s;
    b[j] *= s;
  }

  // -2 log a_n(inf) is the plancherel mass still stored in the pair; it
  // cannot resolve below roundoff, so the requested tolerance is floored
  const double eff_tol = std::max(tail_tol, 1e-13);
  const double defect0 = detail::sample_outerness_defect(a);
  auto budget = [&]() {
    const cplx m = detail::vec_mean(a);
    if (std::abs(m) < 1e-8)
      throw DegenerateA("|a_n(inf)| collapsed during stripping");
    if (!(m.real() > 0.0))
      throw NonPositiveAInfinity("a_n(inf) left the right half plane");
    return -2.0 * std::log(m.real());
  };

  StripResult out;
  std::vector<cplx> recovered;
  std::vector<double> history{budget()};
  double sum_log = 0.0;  // sum of 0.5 log(1+|F_n|^2) over recovered entries
  while (out.steps < d_max) {
    if (history.back() <= eff_tol) {
      out.converged = true;
      break;
    }
    const cplx y = detail::vec_mean(b) / std::conj(detail::vec_mean(a));
    const cplx mu = detail::strip_update(a, b, nodes, y);
    recovered.push_back(y);
    sum_log += 0.5 * std::log1p(std::norm(y));
    out.drift += std::abs(mu);
    ++out.steps;

    if (out.steps % 64 == 0)
      for (std::size_t j = 0; j < n; ++j) {
        const double s =
            1.0 / std::sqrt(std::norm(a[j]) + std::norm(b[j]));
        a[j] *= s;
        b[j] *= s;
      }
    if (out.steps % 16 == 0) {
      const double defect = detail::sample_outerness_defect(a);
      out.outerness_drift = std::max(out.outerness_drift, defect - defect0);
      if (defect > defect0 + 1e-8)
        throw DegenerateA("outerness defect grew from " +
                          std::to_string(defect0) + " to " +
                          std::to_string(defect) + " at step " +
                          std::to_string(out.steps));
    }
    history.push_back(budget());
  }
  out.final_budget = history.back();
  if (!out.converged && out.final_budget <= eff_tol) out.converged = true;

  if (!out.converged) {
    const std::size_t look = std::min<std::size_t>(32, history.size() - 1);
    if (history.back() >= 0.999 * history[history.size() - 1 - look] &&
        out.final_budget > eff_tol && out.steps >= int(look) && look > 0)
      throw TailNotDecaying("plancherel budget stuck at " +
                            std::to_string(out.final_budget) + " after " +
                            std::to_string(out.steps) + " steps");
  }

  // prod (1+|F_n|^2)^{-1/2} >= a(inf) always holds along the recursion; a
  // violation means the run produced nonsense
  const double prod = std::exp(-sum_log);
  if (prod < a_inf0.real() - 1e-8)
    throw DegenerateA("recovered plancherel product " + std::to_string(prod) +
                      " fell below a(inf) = " +
                      std::to_string(a_inf0.real()));

  // mass mismatch between a(inf) and |b|: jensen's formula on the exterior
  // disk makes this twice the log-mass of a's zeros there
  double rhs = 0.0;
  for (const cplx& s : plus.b.samples())
    rhs -= std::log(std::max(1.0 - std::norm(s), 1e-300));
  rhs /= double(n);
  out.plancherel_gap = history.front() - rhs;

  out.sequence = recovered.empty() ? CoeffSequence()
                                   : CoeffSequence(0, std::move(recovered));
  return out;
}

}  // namespace qsphase
