// the qsphase binary: synthesize QSP phase factors from a target signal via
// nonlinear fourier analysis, evaluate and verify them, and exercise the
// forward/inverse round trip.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsphase/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"QSP phase synthesis via SU(2) nonlinear fourier analysis"};
  app.require_subcommand(1);

  qsphase::SynthOptions synth;
  CLI::App* s = app.add_subcommand(
      "synth", "compute phases for a signal file, write a phase file");
  s->add_option("signal", synth.signal_path, "signal json (samples or chebyshev)")
      ->required();
  s->add_option("--out,-o", synth.out_path,
                "phase file destination (default: stdout)");
  s->add_option("--epsilon", synth.epsilon,
                "margin: sup |f| <= 2^(-1/2) - epsilon (default: from file, "
                "else the largest admissible)");
  s->add_option("--grid", synth.grid,
                "grid size N, power of two >= 8 (default: QSPHASE_GRID, else "
                "the sample count, else 1024)");
  s->add_option("--tol", synth.tol, "target weighted residual")
      ->capture_default_str();
  s->add_option("--dmax", synth.d_max,
                "degree cap (default: N/2, the grid's limit)");

  qsphase::EvalOptions eval;
  CLI::App* e = app.add_subcommand(
      "eval", "tabulate the response Im u_d(x) of a phase file as csv");
  e->add_option("phases", eval.phase_path, "phase json")->required();
  e->add_option("--x", eval.xs, "abscissas in [0, 1] (default: grid points)");
  e->add_option("--grid", eval.grid,
                "tabulate on cos(pi j / N) (default: the file's grid)");
  e->add_option("--degree", eval.degree,
                "evaluate a lower-degree prefix (default: full)");

  qsphase::VerifyOptions verify;
  CLI::App* v = app.add_subcommand(
      "verify", "check a phase file (and optionally its signal)");
  v->add_option("phases", verify.phase_path, "phase json")->required();
  v->add_option("signal", verify.signal_path, "signal json (optional)");

  qsphase::RoundtripOptions rt;
  CLI::App* r = app.add_subcommand(
      "roundtrip", "random one-sided coefficients -> forward -> strip -> compare");
  r->add_option("--width", rt.width, "number of coefficients")
      ->capture_default_str();
  r->add_option("--seed", rt.seed, "rng seed")->capture_default_str();
  r->add_option("--norm-cap", rt.norm_cap, "sup bound on the drawn entries")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    const int rc = app.exit(ex);
    return rc == 0 ? 0 : 1;  // flag problems are input errors
  }

  if (app.got_subcommand(s)) return qsphase::cmd_synth(synth, std::cout, std::cerr);
  if (app.got_subcommand(e)) return qsphase::cmd_eval(eval, std::cout, std::cerr);
  if (app.got_subcommand(v)) return qsphase::cmd_verify(verify, std::cout, std::cerr);
  return qsphase::cmd_roundtrip(rt, std::cout, std::cerr);
}
