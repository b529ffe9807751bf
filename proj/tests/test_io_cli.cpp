#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "qsphase/cli.hpp"
#include "qsphase/io.hpp"
#include "qsphase/qsp.hpp"

using namespace qsphase;
namespace fs = std::filesystem;

namespace {

// one scratch root per process: unit_io and unit_cli run the same binary and
// must not clobber each other's files under a parallel ctest
const fs::path& scratch_dir() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() /
                       ("qsphase_io_tests." + std::to_string(getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string path_in_scratch(const std::string& name) {
  return (scratch_dir() / name).string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CliResult {
  int exit_code;
  std::string out, err;
};

// run the installed binary for real; stdout/stderr land in scratch files
CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string base = path_in_scratch("run" + std::to_string(counter++));
  const std::string cmd = std::string(QSPHASE_CLI_PATH) + " " + args + " > " +
                          base + ".out 2> " + base + ".err";
  const int raw = std::system(cmd.c_str());
  REQUIRE(raw != -1);
  REQUIRE(WIFEXITED(raw));
  return {WEXITSTATUS(raw), read_file(base + ".out"),
          read_file(base + ".err")};
}

// set (value != nullptr) or clear an environment variable for one scope
struct EnvGuard {
  std::string name, old;
  bool had;
  EnvGuard(std::string n, const char* value) : name(std::move(n)) {
    const char* prev = std::getenv(name.c_str());
    had = prev != nullptr;
    if (had) old = prev;
    if (value != nullptr)
      setenv(name.c_str(), value, 1);
    else
      unsetenv(name.c_str());
  }
  ~EnvGuard() {
    if (had)
      setenv(name.c_str(), old.c_str(), 1);
    else
      unsetenv(name.c_str());
  }
};

bool same_bits(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

std::string write_const_signal(const std::string& name, double c,
                               std::size_t n, double epsilon = -1.0) {
  SignalFile sf;
  sf.has_samples = true;
  sf.samples.assign(n, c);
  sf.epsilon = epsilon;
  const std::string path = path_in_scratch(name);
  save_signal_file(path, sf);
  return path;
}

std::string write_chebyshev_signal(const std::string& name,
                                   std::vector<double> coeffs) {
  SignalFile sf;
  sf.has_chebyshev = true;
  sf.chebyshev = std::move(coeffs);
  const std::string path = path_in_scratch(name);
  save_signal_file(path, sf);
  return path;
}

}  // namespace

// ---- decimal formatting ----------------------------------------------------------

TEST_CASE("decimal strings survive a print/parse round trip", "[io]") {
  const double cases[] = {0.0,
                          -0.0,
                          1.0,
                          -1.0 / 3.0,
                          0.1,
                          std::numbers::pi,
                          0.7071067811865476,
                          1.0 - std::ldexp(1.0, -53),
                          6.02214076e23,
                          -2.5e-17,
                          1e-308,
                          5e-324};  // the smallest denormal
  for (double x : cases) {
    const double back = parse_real(format_real(x));
    INFO("x = " << format_real(x));
    CHECK(same_bits(back, x));
  }

  CHECK_THROWS_AS(parse_real(""), Error);
  CHECK_THROWS_AS(parse_real("abc"), Error);
  CHECK_THROWS_AS(parse_real("1.5x"), Error);
  CHECK_THROWS_AS(parse_real("1.5 "), Error);
  CHECK_THROWS_AS(parse_real("inf"), Error);
  CHECK_THROWS_AS(parse_real("nan"), Error);
  CHECK_THROWS_AS(parse_real("1e999"), Error);
}

// ---- phase files -----------------------------------------------------------------

TEST_CASE("phase files round trip byte for byte", "[io]") {
  PhaseFile pf;
  pf.epsilon = 0.10710678118654755;
  pf.grid_size = 256;
  pf.phases = PhaseSequence({0.30469265401512152, -1.0 / 7.0, 5e-324});
  pf.plancherel_lhs = 0.19416327164859912;
  pf.plancherel_rhs = 0.19416327164859834;
  pf.residual = 3.0814879110195774e-13;

  const std::string text = write_phase_json(pf);
  const PhaseFile rt = read_phase_json(text);
  CHECK(same_bits(rt.epsilon, pf.epsilon));
  CHECK(rt.grid_size == pf.grid_size);
  REQUIRE(rt.phases.size() == pf.phases.size());
  for (std::size_t k = 0; k < pf.phases.size(); ++k)
    CHECK(same_bits(rt.phases.at(k), pf.phases.at(k)));
  CHECK(same_bits(rt.plancherel_lhs, pf.plancherel_lhs));
  CHECK(same_bits(rt.plancherel_rhs, pf.plancherel_rhs));
  CHECK(same_bits(rt.residual, pf.residual));
  CHECK(write_phase_json(rt) == text);

  // hand-written files may use plain json numbers instead of strings
  const std::string loose = R"({"schema":"qsphase.phases/1","epsilon":0.2,
    "grid":64,"degree":1,"phases":[0.1,-0.2],"plancherel_lhs":0.05,
    "plancherel_rhs":0.05,"residual":1e-9})";
  const PhaseFile lf = read_phase_json(loose);
  CHECK(lf.phases.degree() == 1);
  CHECK(same_bits(lf.phases.at(1), -0.2));

  CHECK_THROWS_AS(
      read_phase_json(R"({"schema":"qsphase.phases/2","epsilon":0.2,
        "grid":64,"degree":0,"phases":[0.1],"plancherel_lhs":0.0,
        "plancherel_rhs":0.0,"residual":0.0})"),
      Error);
  CHECK_THROWS_AS(
      read_phase_json(R"({"schema":"qsphase.phases/1","epsilon":0.2,
        "grid":64,"degree":3,"phases":[0.1,-0.2],"plancherel_lhs":0.0,
        "plancherel_rhs":0.0,"residual":0.0})"),
      Error);
  // entries must sit strictly inside (-pi/2, pi/2)
  CHECK_THROWS_AS(
      read_phase_json(R"({"schema":"qsphase.phases/1","epsilon":0.2,
        "grid":64,"degree":1,"phases":["1.6","0"],"plancherel_lhs":0.0,
        "plancherel_rhs":0.0,"residual":0.0})"),
      PhaseOutOfRange);
  CHECK_THROWS_WITH(read_phase_json("{nope"),
                    Catch::Matchers::ContainsSubstring("malformed"));
}

// ---- signal files ----------------------------------------------------------------

TEST_CASE("signal files enforce exactly one payload", "[io]") {
  SignalFile both;
  both.has_samples = both.has_chebyshev = true;
  both.samples = {0.1};
  both.chebyshev = {0.1};
  CHECK_THROWS_AS(write_signal_json(both), Error);
  CHECK_THROWS_AS(write_signal_json(SignalFile{}), Error);

  SignalFile sf;
  sf.has_samples = true;
  sf.samples = {0.25, 0.1, -1.0 / 3.0, 0.1};
  const SignalFile rt = read_signal_json(write_signal_json(sf));
  CHECK(rt.has_samples);
  CHECK_FALSE(rt.has_chebyshev);
  REQUIRE(rt.samples.size() == sf.samples.size());
  for (std::size_t j = 0; j < sf.samples.size(); ++j)
    CHECK(same_bits(rt.samples[j], sf.samples[j]));
  CHECK(rt.epsilon == -1.0);  // absent round trips as "not supplied"

  SignalFile cf;
  cf.has_chebyshev = true;
  cf.chebyshev = {0.1, 0.0, 0.2};
  cf.epsilon = 0.3;
  const SignalFile crt = read_signal_json(write_signal_json(cf));
  CHECK(crt.has_chebyshev);
  CHECK(same_bits(crt.epsilon, 0.3));
  CHECK(same_bits(crt.chebyshev[2], 0.2));

  CHECK_THROWS_AS(
      read_signal_json(R"({"schema":"qsphase.signal/1",
        "samples":[0.1],"chebyshev":[0.1]})"),
      Error);
  CHECK_THROWS_AS(read_signal_json(R"({"schema":"qsphase.signal/1"})"), Error);
  CHECK_THROWS_AS(read_signal_json(R"({"schema":"qsphase.phases/1",
    "samples":[0.1]})"),
                  Error);
}

TEST_CASE("realize applies the epsilon priority chain", "[io]") {
  const CircleGrid grid(64);
  SignalFile sf;
  sf.has_samples = true;
  sf.samples.assign(grid.size(), 0.3);

  // no epsilon anywhere: the largest admissible margin
  const SignalSamples auto_eps = realize(sf, grid);
  CHECK(std::abs(auto_eps.epsilon() - (inv_sqrt2 - 0.3)) < 1e-15);

  sf.epsilon = 0.2;
  CHECK(std::abs(realize(sf, grid).epsilon() - 0.2) < 1e-15);
  // an explicit override wins over the file
  CHECK(std::abs(realize(sf, grid, 0.3).epsilon() - 0.3) < 1e-15);

  SignalFile cf;
  cf.has_chebyshev = true;
  cf.chebyshev = {0.1, 0.0, 0.2};
  const SignalSamples g = realize(cf, grid);
  CHECK(std::abs(g.value(0) - 0.3) < 1e-15);  // 0.1 + 0.2 T_2(1)

  SignalFile empty;
  CHECK_THROWS_AS(realize(empty, grid), Error);
}

// ---- cli: synth ------------------------------------------------------------------

TEST_CASE("synth reruns are byte identical and honor the output flag", "[cli]") {
  const std::string sig = write_const_signal("const03.json", 0.3, 64);

  const std::string p1 = path_in_scratch("phases1.json");
  const std::string p2 = path_in_scratch("phases2.json");
  const CliResult r1 = run_cli("synth " + sig + " --grid 64 -o " + p1);
  const CliResult r2 = run_cli("synth " + sig + " --grid 64 -o " + p2);
  CHECK(r1.exit_code == 0);
  CHECK(r2.exit_code == 0);
  CHECK(r1.out.find("degree 0") != std::string::npos);
  CHECK(r1.out.find("converged") != std::string::npos);
  CHECK(read_file(p1) == read_file(p2));

  // without --out the phase json goes to stdout, the report to stderr
  const CliResult s1 = run_cli("synth " + sig + " --grid 64");
  const CliResult s2 = run_cli("synth " + sig + " --grid 64");
  CHECK(s1.exit_code == 0);
  CHECK(s1.out == s2.out);
  CHECK(s1.out == read_file(p1));
  CHECK(s1.err.find("degree 0") != std::string::npos);

  const PhaseFile pf = read_phase_json(s1.out);
  CHECK(pf.grid_size == 64);
  CHECK(pf.phases.degree() == 0);
  CHECK(std::abs(pf.phases.at(0) - std::asin(0.3)) < 1e-12);
}

TEST_CASE("cli exit codes follow the contract", "[cli]") {
  // sup |f| = 0.8 crosses the 2^(-1/2) threshold: bad input
  const std::string big = write_const_signal("const08.json", 0.8, 64);
  const CliResult r_big = run_cli("synth " + big);
  CHECK(r_big.exit_code == 1);
  CHECK(r_big.err.find("2^(-1/2)") != std::string::npos);

  // a degree cap far below what the ramp needs: clean not-converged exit,
  // and the partial phase file still gets written
  const std::string ramp = write_chebyshev_signal("ramp.json", {0.0, 0.4});
  const std::string pr = path_in_scratch("ramp_phases.json");
  const CliResult r_cap =
      run_cli("synth " + ramp + " --grid 1024 --tol 1e-8 --dmax 5 -o " + pr);
  CHECK(r_cap.exit_code == 2);
  CHECK(r_cap.out.find("NOT converged") != std::string::npos);
  CHECK(load_phase_file(pr).phases.degree() <= 5);

  CHECK(run_cli("synth " + path_in_scratch("missing.json")).exit_code == 1);
  CHECK(run_cli("synth " + big + " --grid 100").exit_code == 1);

  // sample files pin their own grid size
  const CliResult r_mismatch = run_cli("synth " +
                                       write_const_signal("c03b.json", 0.3, 64) +
                                       " --grid 128");
  CHECK(r_mismatch.exit_code == 1);

  CHECK(run_cli("frobnicate").exit_code == 1);
  CHECK(run_cli("").exit_code == 1);
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("synth --help").exit_code == 0);
}

TEST_CASE("QSPHASE_GRID picks the default grid", "[cli]") {
  const std::string sig = write_chebyshev_signal("env_sig.json", {0.25});
  const std::string out = path_in_scratch("env_phases.json");
  {
    const EnvGuard env("QSPHASE_GRID", "128");
    CHECK(run_cli("synth " + sig + " -o " + out).exit_code == 0);
    CHECK(load_phase_file(out).grid_size == 128);
    // an explicit flag still wins
    CHECK(run_cli("synth " + sig + " --grid 64 -o " + out).exit_code == 0);
    CHECK(load_phase_file(out).grid_size == 64);
  }
  {
    const EnvGuard env("QSPHASE_GRID", "100");
    const CliResult r = run_cli("synth " + sig + " -o " + out);
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("QSPHASE_GRID") != std::string::npos);
  }
  {
    // without flag or env, a sample payload pins the grid
    const EnvGuard env("QSPHASE_GRID", nullptr);
    const std::string samp = write_const_signal("env_samp.json", 0.2, 64);
    CHECK(run_cli("synth " + samp + " -o " + out).exit_code == 0);
    CHECK(load_phase_file(out).grid_size == 64);
  }
}

// ---- cli: eval -------------------------------------------------------------------

TEST_CASE("eval tabulates deterministic csv", "[cli]") {
  PhaseFile pf;
  pf.epsilon = 0.2;
  pf.grid_size = 64;
  pf.phases = PhaseSequence({0.2, -0.15, 0.1});
  pf.plancherel_lhs = pf.plancherel_rhs = 0.0;
  pf.residual = 0.0;
  const std::string path = path_in_scratch("eval_phases.json");
  save_phase_file(path, pf);

  const CliResult r1 = run_cli("eval " + path + " --x 0.25 --x 0.5 --x 1");
  const CliResult r2 = run_cli("eval " + path + " --x 0.25 --x 0.5 --x 1");
  CHECK(r1.exit_code == 0);
  CHECK(r1.out == r2.out);

  std::string expect = "x,response\n";
  for (double x : {0.25, 0.5, 1.0})
    expect +=
        format_real(x) + "," + format_real(qsp_response(pf.phases, 2, x)) + "\n";
  CHECK(r1.out == expect);

  // asking for a prefix works, asking past the stored degree does not
  CHECK(run_cli("eval " + path + " --x 0.5 --degree 1").exit_code == 0);
  const CliResult deep = run_cli("eval " + path + " --x 0.5 --degree 5");
  CHECK(deep.exit_code == 1);
  CHECK(deep.err.find("degree") != std::string::npos);

  // a zero phase gives the zero response, printed exactly
  PhaseFile zf = pf;
  zf.phases = PhaseSequence({0.0});
  const std::string zpath = path_in_scratch("zero_phases.json");
  save_phase_file(zpath, zf);
  const CliResult rz = run_cli("eval " + zpath + " --x 0.5");
  CHECK(rz.out == "x,response\n0.5,0\n");

  // default abscissas come from the stored grid: one row per cos(pi j / N)
  const CliResult grid_rows = run_cli("eval " + zpath);
  CHECK(std::count(grid_rows.out.begin(), grid_rows.out.end(), '\n') ==
        long(zf.grid_size / 2 + 2));
}

// ---- cli: verify -----------------------------------------------------------------

TEST_CASE("verify passes clean output and catches tampering", "[cli]") {
  const std::string sig = write_const_signal("verify_sig.json", 0.3, 64);
  const std::string ph = path_in_scratch("verify_phases.json");
  REQUIRE(run_cli("synth " + sig + " --grid 64 -o " + ph).exit_code == 0);

  const CliResult clean = run_cli("verify " + ph);
  CHECK(clean.exit_code == 0);
  CHECK(clean.out.find("[FAIL]") == std::string::npos);
  CHECK(clean.out.find("[ ok ] plancherel") != std::string::npos);

  // the signal unlocks the residual and exact-plancherel checks
  const CliResult with_sig = run_cli("verify " + ph + " " + sig);
  CHECK(with_sig.exit_code == 0);
  CHECK(with_sig.out.find("[ ok ] residual") != std::string::npos);

  // nudge psi_0 by 1e-2: phases stay in range but the invariants break
  PhaseFile pf = load_phase_file(ph);
  std::vector<double> bent = pf.phases.values();
  bent[0] += 1e-2;
  pf.phases = PhaseSequence(bent);
  const std::string tampered = path_in_scratch("tampered_phases.json");
  save_phase_file(tampered, pf);

  const CliResult bad = run_cli("verify " + tampered);
  CHECK(bad.exit_code == 3);
  CHECK(bad.out.find("[FAIL] plancherel") != std::string::npos);
  CHECK(run_cli("verify " + tampered + " " + sig).exit_code == 3);

  CHECK(run_cli("verify " + path_in_scratch("missing.json")).exit_code == 1);
}

// ---- cli: roundtrip --------------------------------------------------------------

TEST_CASE("roundtrip reports recovery quality with the right exits", "[cli]") {
  const CliResult empty = run_cli("roundtrip --width 0");
  CHECK(empty.exit_code == 0);
  CHECK(empty.out.find("nothing to strip") != std::string::npos);

  const CliResult a = run_cli("roundtrip --width 12 --seed 7");
  const CliResult b = run_cli("roundtrip --width 12 --seed 7");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("max recovery error") != std::string::npos);

  // long draws routinely make a non-outer a; recovery must still be exact
  const CliResult wide =
      run_cli("roundtrip --width 50 --seed 42 --norm-cap 0.2");
  CHECK(wide.exit_code == 0);

  // far outside the admissible regime a(inf) underflows: reported, exit 3
  const CliResult wild =
      run_cli("roundtrip --width 50 --seed 42 --norm-cap 5.0");
  CHECK(wild.exit_code == 3);
  CHECK(wild.err.find("collapsed") != std::string::npos);

  CHECK(run_cli("roundtrip --width -3").exit_code == 1);
}
