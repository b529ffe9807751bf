#pragma once

// outer completion: from |b| < 1 on the circle build the unique outer a with
// |a|^2 + |b|^2 = 1 and a(inf) real positive, a = exp(M - iHM) with
// M = log sqrt(1 - |b|^2).  the pair lands in the B_eps class where the
// riemann-hilbert fixed point contracts with rate <= 1 - eta*eps.

#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "qsphase/circle_function.hpp"
#include "qsphase/errors.hpp"
#include "qsphase/su2.hpp"

namespace qsphase {

inline constexpr double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
// eta = 3^{3/2}/2 = min over u in (0,1] of 1/(u^2 sqrt(1-u^2)); it makes
// 1 - sqrt(1-u^2)/u >= eta*(u - 2^{-1/2}) hold for all admissible u
inline constexpr double contraction_eta = 2.598076211353316;

struct BEpsilonPair {
  SU2Pair pair;
  double epsilon = 0.0;
  double outerness_defect = 0.0;  // |mean log|a| - log|a(inf)||
  double ratio_bound = 0.0;       // sup_j |b_j| / |a_j|
};

// grid outerness defect: mean of log|a| minus log of the mean (= the value
// at infinity for functions analytic outside the disk)
inline double outerness_defect_of(const CircleFunction& a) {
  double m = 0.0;
  for (const cplx& s : a.samples()) {
    const double r = std::abs(s);
    if (r <= 0.0) throw DegenerateA("zero sample in outerness check");
    m += std::log(r);
  }
  m /= double(a.size());
  const double c0 = std::abs(mean_value(a));
  if (c0 <= 0.0) throw DegenerateA("vanishing mean in outerness check");
  return std::abs(m - std::log(c0));
}

// checks the B_eps membership invariants and fills the diagnostics
inline BEpsilonPair validate_b_epsilon(SU2Pair pair, double epsilon) {
  if (!(epsilon > 0.0))
    throw SignalTooLarge("margin epsilon must be positive, got " +
                         std::to_string(epsilon));
  if (pair.a.grid() != pair.b.grid())
    throw GridMismatch("pair components on different grids");

  double inf_a = 1e300, ratio = 0.0;
  for (std::size_t j = 0; j < pair.a.size(); ++j) {
    const double aa = std::abs(pair.a.sample(j));
    inf_a = std::min(inf_a, aa);
    if (aa > 0.0) ratio = std::max(ratio, std::abs(pair.b.sample(j)) / aa);
  }
  if (inf_a < inv_sqrt2 + epsilon - 1e-9)
    throw SignalTooLarge("inf |a| = " + std::to_string(inf_a) +
                         " below 2^(-1/2) + epsilon = " +
                         std::to_string(inv_sqrt2 + epsilon));
  if (ratio > 1.0 - contraction_eta * epsilon + 1e-9)
    throw ContractionBroken("sup |b/a| = " + std::to_string(ratio) +
                            " exceeds 1 - eta*epsilon = " +
                            std::to_string(1.0 - contraction_eta * epsilon));

  const SU2Defects defects = su2_defects(pair);
  if (defects.unitarity > 1e-10)
    throw NonUnimodularFactor("|a|^2 + |b|^2 deviates from 1 by " +
                              std::to_string(defects.unitarity));

  const double defect = outerness_defect_of(pair.a);
  if (defect > 1e-9)
    throw GridTooCoarse("outerness defect " + std::to_string(defect) +
                        " above 1e-9; refine the grid");

  return BEpsilonPair{std::move(pair), epsilon, defect, ratio};
}

inline BEpsilonPair complete_outer(const CircleFunction& b, double epsilon) {
  if (!(epsilon > 0.0))
    throw SignalTooLarge("margin epsilon must be positive, got " +
                         std::to_string(epsilon));
  const double cap = 1.0 - (inv_sqrt2 + epsilon) * (inv_sqrt2 + epsilon);
  double sup_b2 = 0.0;
  for (const cplx& s : b.samples()) sup_b2 = std::max(sup_b2, std::norm(s));
  if (sup_b2 > cap + 1e-12)
    throw SignalTooLarge("sup |b|^2 = " + std::to_string(sup_b2) +
                         " exceeds 1 - (2^(-1/2) + epsilon)^2 = " +
                         std::to_string(cap));

  const std::size_t n = b.size();
  std::vector<cplx> m(n);
  for (std::size_t j = 0; j < n; ++j)
    m[j] = cplx(0.5 * std::log1p(-std::norm(b.sample(j))), 0.0);
  const CircleFunction mf = CircleFunction::from_samples(b.grid(), std::move(m));
  const CircleFunction hm = hilbert_transform(mf);

  // M - iHM has spectrum in n <= 0, so a extends analytically outside the
  // disk and a(inf) = exp(mean M) > 0; |a| = sqrt(1 - |b|^2) pointwise
  std::vector<cplx> a(n);
  for (std::size_t j = 0; j < n; ++j)
    a[j] = std::polar(std::exp(mf.sample(j).real()), -hm.sample(j).real());

  return validate_b_epsilon(
      SU2Pair{CircleFunction::from_samples(b.grid(), std::move(a)), b},
      epsilon);
}

}  // namespace qsphase
