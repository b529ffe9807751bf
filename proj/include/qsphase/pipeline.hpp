#pragma once

// end to end: signal f -> phases Psi, plus the instruments used to verify a
// result (plancherel identity, weighted residuals, convergence profiles,
// lipschitz probes, the rho metric on pairs).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qsphase/circle_function.hpp"
#include "qsphase/coeff_sequence.hpp"
#include "qsphase/errors.hpp"
#include "qsphase/grid.hpp"
#include "qsphase/layer_stripping.hpp"
#include "qsphase/outer.hpp"
#include "qsphase/qsp.hpp"
#include "qsphase/riemann_hilbert.hpp"
#include "qsphase/signal.hpp"
#include "qsphase/su2.hpp"

namespace qsphase {

// b(z_j) = i f(cos theta_j); the even extension makes b a genuine function
// of z = e^{2 i theta}, so the paired bins are symmetrized exactly
inline CircleFunction signal_to_b(const SignalSamples& f) {
  const std::size_t n = f.size();
  std::vector<cplx> s(n);
  for (std::size_t j = 0; j < n; ++j) s[j] = cplx(0.0, f.value(j));
  std::vector<cplx> bins =
      CircleFunction::from_samples(f.grid(), std::move(s)).bins();
  for (std::size_t k = 1; k < n - k; ++k) {  // nyquist bin has no partner
    const cplx avg = 0.5 * (bins[k] + bins[n - k]);
    bins[k] = avg;
    bins[n - k] = avg;
  }
  return CircleFunction::from_bins(f.grid(), std::move(bins));
}

// (2/pi int_0^1 f^2 dx / sqrt(1-x^2))^{1/2} == rms over the uniform theta grid
inline double hs_norm(const SignalSamples& f) {
  double s = 0.0;
  for (double v : f.values()) s += v * v;
  return std::sqrt(s / double(f.size()));
}

// lhs: psi_0 once, psi_k twice for k >= 1 (F_{-n} = F_n); rhs: quadrature of
// -2/pi int_0^1 log(1 - f^2) dx / sqrt(1-x^2)
inline std::pair<double, double> plancherel_check(const PhaseSequence& psi,
                                                  const SignalSamples& f) {
  double lhs = 0.0;
  for (int k = 0; k <= psi.degree(); ++k) {
    const double t = std::tan(psi.at(std::size_t(k)));
    lhs += (k == 0 ? 1.0 : 2.0) * std::log1p(t * t);
  }
  double rhs = 0.0;
  for (double v : f.values()) rhs -= std::log1p(-v * v);
  return {lhs, rhs / double(f.size())};
}

namespace detail {

// one recursion sweep per abscissa, snapshotting Im u00 at each requested
// degree; degrees must be sorted ascending and valid for psi
inline std::vector<std::vector<double>> response_table(
    const PhaseSequence& psi, const CircleGrid& grid,
    const std::vector<int>& degrees) {
  const std::size_t n = grid.size();
  std::vector<std::vector<double>> table(degrees.size(),
                                         std::vector<double>(n));
  for (std::size_t j = 0; j <= n / 2; ++j) {
    const double x = std::abs(grid.abscissa(j));
    const Unitary2 w = w_matrix(x);
    Unitary2 u = z_rotation(psi.at(0));
    std::size_t slot = 0;
    for (int d = 0; d <= degrees.back(); ++d) {
      if (d > 0) {
        u = mul(w, mul(u, w));
        const cplx e2 = std::polar(1.0, 2.0 * psi.at(std::size_t(d)));
        u.u00 *= e2;
        u.u11 *= std::conj(e2);
      }
      for (; slot < degrees.size() && degrees[slot] == d; ++slot)
        table[slot][j] = u.u00.imag();
    }
  }
  for (auto& row : table)  // response is even in x, like the stored signal
    for (std::size_t j = n / 2 + 1; j < n; ++j) row[j] = row[n - j];
  return table;
}

inline double rms_diff(const std::vector<double>& u,
                       const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j)
    s += (u[j] - v[j]) * (u[j] - v[j]);
  return std::sqrt(s / double(u.size()));
}

}  // namespace detail

// weighted residual ||Im u_d - f|| for each requested degree
inline std::vector<double> convergence_profile(const PhaseSequence& psi,
                                               const SignalSamples& f,
                                               const std::vector<int>& d_list) {
  for (int d : d_list)
    if (d < 0 || d > psi.degree())
      throw DegreeOutOfRange("profile degree " + std::to_string(d) +
                             " outside [0, " + std::to_string(psi.degree()) +
                             "]");
  std::vector<int> sorted = d_list;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.empty()) return {};

  const std::vector<std::vector<double>> table =
      detail::response_table(psi, f.grid(), sorted);
  std::vector<double> out(d_list.size());
  for (std::size_t i = 0; i < d_list.size(); ++i) {
    const std::size_t row = std::size_t(
        std::lower_bound(sorted.begin(), sorted.end(), d_list[i]) -
        sorted.begin());
    out[i] = detail::rms_diff(table[row], f.values());
  }
  return out;
}

struct SynthesisReport {
  PhaseSequence phases;
  int degree = -1;
  double epsilon = 0.0;  // the signal margin the input carried
  double plancherel_lhs = 0.0;
  double plancherel_rhs = 0.0;
  double plancherel_budget = 0.0;  // |lhs - rhs| is guaranteed under this
  double hs_residual = 0.0;
  int iterations = 0;  // fixed-point sweeps inside the factorization
  bool converged = false;
  std::map<std::string, double> drift;
};

// the full chain: b = i f -> outer completion -> riemann-hilbert split ->
// layer stripping -> phases. degree is chosen a posteriori: strip until the
// leftover plancherel budget is <= tol^2 / 4, so the weighted residual lands
// near tol/2. d_max < 0 means "up to N/2"; the grid should satisfy
// N >= 8 * degree for the tail estimates to be trustworthy.
inline SynthesisReport synthesize(const SignalSamples& f, double tol = 1e-6,
                                  int d_max = -1) {
  if (!(tol > 0.0) || !std::isfinite(tol))
    throw Error("tolerance must be a positive real");
  const int n = int(f.size());
  const int d_cap = d_max < 0 ? n / 2 : std::min(d_max, n / 2);

  const CircleFunction b = signal_to_b(f);
  // margin of the completed pair, not of the signal: inf |a| = sqrt(1 - sup f^2)
  const double eps_pair = std::sqrt(1.0 - f.sup() * f.sup()) - inv_sqrt2;
  const BEpsilonPair be = complete_outer(b, eps_pair);
  const RHFactors rh = rh_factorize(be);
  const StripResult strip = layer_strip_all(rh.plus, d_cap, 0.25 * tol * tol);

  SynthesisReport rep;
  rep.epsilon = f.epsilon();
  rep.iterations = rh.iterations;

  if (strip.sequence.empty()) {
    rep.phases = PhaseSequence({0.0});  // the d = 0 identity protocol
  } else {
    // mirror the recovered half line; the conversion enforces that F is
    // even and purely imaginary
    const int d = strip.sequence.hi();
    std::vector<cplx> c(std::size_t(2 * d + 1));
    for (int k = -d; k <= d; ++k)
      c[std::size_t(k + d)] = strip.sequence.at(std::abs(k));
    rep.phases = coeffs_to_phases(CoeffSequence(-d, std::move(c)));
  }
  rep.degree = rep.phases.degree();

  const std::pair<double, double> pl = plancherel_check(rep.phases, f);
  rep.plancherel_lhs = pl.first;
  rep.plancherel_rhs = pl.second;
  // the identity is exact up to twice the unstripped tail, the split's own
  // defects, any non-outer gap, and quadrature roundoff
  rep.plancherel_budget =
      2.0 * strip.final_budget + std::abs(strip.plancherel_gap) +
      4.0 * (rh.reproduction_defect + rh.support_defect) +
      1e-11 * (1.0 + std::abs(rep.plancherel_rhs));

  const std::vector<double> resp =
      detail::response_table(rep.phases, f.grid(), {rep.degree}).front();
  rep.hs_residual = detail::rms_diff(resp, f.values());
  rep.converged = strip.converged && rep.hs_residual <= tol;

  rep.drift["epsilon_pair"] = eps_pair;
  rep.drift["outer_defect"] = be.outerness_defect;
  rep.drift["rh_rate"] = rh.contraction_rate;
  rep.drift["rh_support"] = rh.support_defect;
  rep.drift["rh_reproduction"] = rh.reproduction_defect;
  rep.drift["strip_drift"] = strip.drift;
  rep.drift["strip_tail_budget"] = strip.final_budget;
  rep.drift["strip_gap"] = strip.plancherel_gap;
  rep.drift["outerness_drift"] = strip.outerness_drift;
  return rep;
}

struct LipschitzProbe {
  double ratio = 0.0;
  bool degenerate = false;  // ||f - g|| ~ 0, ratio reported as 0
  double phase_dist = 0.0;  // sup_k |psi_k - psi~_k|, shorter side zero-padded
  double signal_dist = 0.0;
};

// synthesize both signals under a shared margin and compare
inline LipschitzProbe lipschitz_probe(const SignalSamples& f,
                                      const SignalSamples& g, double epsilon,
                                      double tol = 1e-6) {
  if (f.grid() != g.grid())
    throw GridMismatch("probe signals live on different grids");
  const SynthesisReport rf =
      synthesize(SignalSamples::from_samples(f.grid(), f.values(), epsilon), tol);
  const SynthesisReport rg =
      synthesize(SignalSamples::from_samples(g.grid(), g.values(), epsilon), tol);

  LipschitzProbe out;
  out.signal_dist = detail::rms_diff(f.values(), g.values());
  const int top = std::max(rf.degree, rg.degree);
  for (int k = 0; k <= top; ++k) {
    const double pf = k <= rf.degree ? rf.phases.at(std::size_t(k)) : 0.0;
    const double pg = k <= rg.degree ? rg.phases.at(std::size_t(k)) : 0.0;
    out.phase_dist = std::max(out.phase_dist, std::abs(pf - pg));
  }
  if (out.signal_dist < 1e-15) {
    out.degenerate = true;
    return out;
  }
  out.ratio = out.phase_dist / out.signal_dist;
  return out;
}

// rho((a,b),(c,d)) = ||a - c||_2 + ||b - d||_2 + |log a(inf) - log c(inf)|
inline double rho_metric(const SU2Pair& p, const SU2Pair& q) {
  if (p.a.grid() != q.a.grid())
    throw GridMismatch("pairs live on different grids");
  const cplx ma = mean_value(p.a), mc = mean_value(q.a);
  if (!(ma.real() > 0.0) || !(mc.real() > 0.0))
    throw NonPositiveAInfinity("rho metric needs both a(inf) positive");
  const std::size_t n = p.a.size();
  double da = 0.0, db = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    da += std::norm(p.a.sample(j) - q.a.sample(j));
    db += std::norm(p.b.sample(j) - q.b.sample(j));
  }
  return std::sqrt(da / double(n)) + std::sqrt(db / double(n)) +
         std::abs(std::log(std::abs(ma)) - std::log(std::abs(mc)));
}

}  // namespace qsphase
