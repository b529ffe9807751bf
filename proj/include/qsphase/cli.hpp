#pragma once

// command implementations behind the qsphase binary: synth, eval, verify,
// roundtrip.  commands print reports to `out`, diagnostics to `err`, and
// return the process exit code: 0 ok, 1 bad input, 2 not converged, 3 a
// verification check failed.  everything numeric is printed via %.17g so
// reruns are byte identical.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "qsphase/coeff_sequence.hpp"
#include "qsphase/errors.hpp"
#include "qsphase/grid.hpp"
#include "qsphase/io.hpp"
#include "qsphase/layer_stripping.hpp"
#include "qsphase/pipeline.hpp"
#include "qsphase/qsp.hpp"
#include "qsphase/signal.hpp"
#include "qsphase/su2.hpp"

namespace qsphase {

// not-converged outcomes get exit 2; everything else thrown is bad input
inline int exit_code_for(const Error& e) {
  if (dynamic_cast<const NoConvergence*>(&e) != nullptr ||
      dynamic_cast<const TailNotDecaying*>(&e) != nullptr ||
      dynamic_cast<const ContractionBroken*>(&e) != nullptr)
    return 2;
  return 1;
}

namespace detail {

inline std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// --grid flag > QSPHASE_GRID env > sample count > 1024
inline std::size_t pick_grid_size(int flag, const SignalFile* sf) {
  if (flag > 0) return std::size_t(flag);
  if (const char* env = std::getenv("QSPHASE_GRID")) {
    const double x = parse_real(env);
    if (x < 8.0 || x != std::floor(x) ||
        (std::size_t(x) & (std::size_t(x) - 1)) != 0)
      throw Error("QSPHASE_GRID='" + std::string(env) +
                  "' must be a power of two >= 8");
    return std::size_t(x);
  }
  if (sf != nullptr && sf->has_samples) return sf->samples.size();
  return 1024;
}

// probe abscissas x = cos(pi j / N), endpoints included, ~65 points
inline std::vector<double> probe_abscissas(const CircleGrid& grid) {
  const std::size_t n = grid.size();
  const std::size_t step = std::max<std::size_t>(1, n / 128);
  std::vector<double> xs;
  for (std::size_t j = 0; j <= n / 2; j += step)
    xs.push_back(std::abs(grid.abscissa(j)));
  if (xs.size() < 2 || xs.back() != std::abs(grid.abscissa(n / 2)))
    xs.push_back(std::abs(grid.abscissa(n / 2)));
  return xs;
}

}  // namespace detail

// ---- synth ---------------------------------------------------------------------

struct SynthOptions {
  std::string signal_path;
  std::string out_path;   // empty: phase json goes to `out`
  double epsilon = -1.0;  // <= 0: the file's margin, else the default
  int grid = 0;           // 0: env / inferred
  double tol = 1e-6;
  int d_max = -1;
};

inline int cmd_synth(const SynthOptions& opts, std::ostream& out,
                     std::ostream& err) {
  try {
    const SignalFile sf = load_signal_file(opts.signal_path);
    const CircleGrid grid(detail::pick_grid_size(opts.grid, &sf));
    const SignalSamples f = realize(sf, grid, opts.epsilon);
    const SynthesisReport rep = synthesize(f, opts.tol, opts.d_max);

    PhaseFile pf;
    pf.epsilon = rep.epsilon;
    pf.grid_size = grid.size();
    pf.phases = rep.phases;
    pf.plancherel_lhs = rep.plancherel_lhs;
    pf.plancherel_rhs = rep.plancherel_rhs;
    pf.residual = rep.hs_residual;

    std::ostream& report = opts.out_path.empty() ? err : out;
    report << "degree " << rep.degree << ", residual "
           << format_real(rep.hs_residual) << ", plancherel gap "
           << format_real(rep.plancherel_lhs - rep.plancherel_rhs)
           << ", fixed-point iterations " << rep.iterations << ", "
           << (rep.converged ? "converged" : "NOT converged") << "\n";
    if (opts.out_path.empty())
      out << write_phase_json(pf);
    else
      save_phase_file(opts.out_path, pf);
    return rep.converged ? 0 : 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

// ---- eval ----------------------------------------------------------------------

struct EvalOptions {
  std::string phase_path;
  std::vector<double> xs;  // explicit abscissas win over --grid
  int grid = 0;            // 0: the file's recorded grid
  int degree = -1;         // -1: the file's degree
};

inline int cmd_eval(const EvalOptions& opts, std::ostream& out,
                    std::ostream& err) {
  try {
    const PhaseFile pf = load_phase_file(opts.phase_path);
    const int d = opts.degree >= 0 ? opts.degree : pf.phases.degree();
    std::vector<double> xs = opts.xs;
    if (xs.empty()) {
      const CircleGrid grid(opts.grid > 0 ? std::size_t(opts.grid)
                                          : pf.grid_size);
      for (std::size_t j = 0; j <= grid.size() / 2; ++j)
        xs.push_back(std::abs(grid.abscissa(j)));
    }
    out << "x,response\n";
    for (double x : xs)
      out << format_real(x) << ","
          << format_real(qsp_response(pf.phases, d, x)) << "\n";
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

// ---- verify --------------------------------------------------------------------

struct VerifyOptions {
  std::string phase_path;
  std::string signal_path;  // optional; empty means phase-file-only checks
};

inline int cmd_verify(const VerifyOptions& opts, std::ostream& out,
                      std::ostream& err) {
  try {
    const PhaseFile pf = load_phase_file(opts.phase_path);
    const CircleGrid grid(pf.grid_size);
    const int d = pf.phases.degree();

    bool all_ok = true;
    auto check = [&](const std::string& name, double measured, double bound) {
      const bool ok = measured <= bound;
      all_ok = all_ok && ok;
      out << (ok ? "[ ok ] " : "[FAIL] ") << name << ": measured "
          << format_real(measured) << ", bound " << format_real(bound)
          << "\n";
    };

    double max_phase = 0.0;
    for (double p : pf.phases.values())
      max_phase = std::max(max_phase, std::abs(p));
    check("phase-range", max_phase, std::numbers::pi / 2.0 - 1e-12);

    const std::vector<double> xs = detail::probe_abscissas(grid);
    double unit = 0.0, corr = 0.0;
    for (double x : xs) {
      unit = std::max(unit, qsp_unitary(pf.phases, d, x).unitarity_defect());
      corr = std::max(corr, correspondence_check(pf.phases, d, x));
    }
    check("unitarity", unit, 1e-10);
    check("correspondence", corr, 1e-8);

    double lhs = 0.0;
    for (int k = 0; k <= d; ++k) {
      const double t = std::tan(pf.phases.at(std::size_t(k)));
      lhs += (k == 0 ? 1.0 : 2.0) * std::log1p(t * t);
    }
    check("plancherel-lhs-consistency", std::abs(lhs - pf.plancherel_lhs),
          1e-12 * (1.0 + std::abs(lhs)));

    // the synthesis truncation leaves ~2 residual^2 of plancherel mass
    const double pl_bound =
        std::max(1e-8, 4.0 * pf.residual * pf.residual + 1e-10);
    if (opts.signal_path.empty()) {
      check("plancherel", std::abs(lhs - pf.plancherel_rhs), pl_bound);
    } else {
      const SignalFile sf = load_signal_file(opts.signal_path);
      const SignalSamples f = realize(sf, grid);
      const std::pair<double, double> pl = plancherel_check(pf.phases, f);
      check("plancherel", std::abs(pl.first - pl.second), pl_bound);
      const double res =
          detail::rms_diff(detail::response_table(pf.phases, grid, {d}).front(),
                           f.values());
      check("residual", res, 1.000001 * pf.residual + 1e-9);
    }
    return all_ok ? 0 : 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

// ---- roundtrip -----------------------------------------------------------------

struct RoundtripOptions {
  int width = 8;
  unsigned long long seed = 1;
  double norm_cap = 0.2;
};

inline int cmd_roundtrip(const RoundtripOptions& opts, std::ostream& out,
                         std::ostream& err) {
  try {
    if (opts.width < 0) throw Error("width must be nonnegative");
    if (!(opts.norm_cap >= 0.0)) throw Error("norm cap must be nonnegative");
    out << "width " << opts.width << ", seed " << opts.seed << ", cap "
        << format_real(opts.norm_cap) << "\n";
    if (opts.width == 0) {
      out << "max recovery error 0 (nothing to strip)\n";
      return 0;
    }

    const CircleGrid grid(detail::next_pow2(
        std::max<std::size_t>(64, 8 * std::size_t(opts.width))));
    std::mt19937_64 g(opts.seed);
    std::uniform_real_distribution<double> u(-opts.norm_cap, opts.norm_cap);
    std::vector<cplx> entries(std::size_t(opts.width));
    for (cplx& c : entries) c = cplx(u(g), u(g));
    const CoeffSequence F(0, entries);
    const SU2Pair fwd = nlfs_finite(F, grid);
    out << "grid " << grid.size() << ", pair unitarity defect "
        << format_real(su2_defects(fwd).unitarity) << "\n";

    const StripResult r = layer_strip_all(fwd, opts.width + 64, 1e-13);
    double worst = 0.0;
    const int steps = r.sequence.empty() ? 0 : r.sequence.hi() + 1;
    for (int k = 0; k < std::max(opts.width, steps); ++k) {
      const cplx got = k < steps ? r.sequence.at(k) : cplx(0.0, 0.0);
      const cplx want = k < opts.width ? F.at(k) : cplx(0.0, 0.0);
      worst = std::max(worst, std::abs(got - want));
    }
    out << "recovered " << steps << " entries, max recovery error "
        << format_real(worst) << ", plancherel gap "
        << format_real(r.plancherel_gap) << "\n";
    if (r.plancherel_gap > 1e-6)
      out << "warning: NonOuter -- the plancherel gap means a has zeros "
             "beyond the unit circle; stripping still inverts the product, "
             "but the outer-normalized preimage of this pair differs\n";
    return worst <= 1e-9 ? 0 : 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    // a degenerate or stuck strip is a failed roundtrip, not bad input
    return dynamic_cast<const DegenerateA*>(&e) != nullptr ||
                   dynamic_cast<const NonPositiveAInfinity*>(&e) != nullptr
               ? 3
               : exit_code_for(e);
  }
}

}  // namespace qsphase
