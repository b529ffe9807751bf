#pragma once

// file formats: phase files and signal files as human-diffable json.  every
// float travels as a %.17g decimal string so write -> read is bit exact and
// reruns are byte identical.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qsphase/errors.hpp"
#include "qsphase/grid.hpp"
#include "qsphase/qsp.hpp"
#include "qsphase/signal.hpp"

namespace qsphase {

using json = nlohmann::ordered_json;

inline constexpr const char* phase_schema = "qsphase.phases/1";
inline constexpr const char* signal_schema = "qsphase.signal/1";

inline std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline double parse_real(const std::string& s) {
  const char* c = s.c_str();
  char* end = nullptr;
  const double x = std::strtod(c, &end);
  if (end == c || *end != '\0' || !std::isfinite(x))
    throw Error("not a finite decimal: '" + s + "'");
  return x;
}

namespace detail {

// floats are written as strings but hand-authored files may use numbers
inline double json_real(const json& j, const std::string& key) {
  const json& v = j.at(key);
  if (v.is_string()) return parse_real(v.get<std::string>());
  if (v.is_number()) return v.get<double>();
  throw Error("field '" + key + "' is neither a decimal string nor a number");
}

inline std::vector<double> json_real_array(const json& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const json& e : v) {
    if (e.is_string())
      out.push_back(parse_real(e.get<std::string>()));
    else if (e.is_number())
      out.push_back(e.get<double>());
    else
      throw Error("array entry is neither a decimal string nor a number");
  }
  return out;
}

inline json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed json: ") + e.what());
  }
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

}  // namespace detail

// ---- phase files ---------------------------------------------------------------

struct PhaseFile {
  double epsilon = 0.0;
  std::size_t grid_size = 0;
  PhaseSequence phases;  // degree is phases.degree(), recorded redundantly
  double plancherel_lhs = 0.0;
  double plancherel_rhs = 0.0;
  double residual = 0.0;
};

inline std::string write_phase_json(const PhaseFile& pf) {
  json j;
  j["schema"] = phase_schema;
  j["epsilon"] = format_real(pf.epsilon);
  j["grid"] = pf.grid_size;
  j["degree"] = pf.phases.degree();
  json arr = json::array();
  for (double p : pf.phases.values()) arr.push_back(format_real(p));
  j["phases"] = std::move(arr);
  j["plancherel_lhs"] = format_real(pf.plancherel_lhs);
  j["plancherel_rhs"] = format_real(pf.plancherel_rhs);
  j["residual"] = format_real(pf.residual);
  return j.dump(2) + "\n";
}

inline PhaseFile read_phase_json(const std::string& text) {
  const json j = detail::parse_document(text);
  try {
    if (!j.contains("schema") || !j.at("schema").is_string() ||
        j.at("schema").get<std::string>() != phase_schema)
      throw Error(std::string("expected schema ") + phase_schema);
    PhaseFile pf;
    pf.epsilon = detail::json_real(j, "epsilon");
    pf.grid_size = j.at("grid").get<std::size_t>();
    pf.phases = PhaseSequence(detail::json_real_array(j.at("phases")));
    if (j.at("degree").get<int>() != pf.phases.degree())
      throw Error("degree field disagrees with the phases array");
    pf.plancherel_lhs = detail::json_real(j, "plancherel_lhs");
    pf.plancherel_rhs = detail::json_real(j, "plancherel_rhs");
    pf.residual = detail::json_real(j, "residual");
    return pf;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad phase file: ") + e.what());
  }
}

inline void save_phase_file(const std::string& path, const PhaseFile& pf) {
  detail::spill(path, write_phase_json(pf));
}

inline PhaseFile load_phase_file(const std::string& path) {
  return read_phase_json(detail::slurp(path));
}

// ---- signal files --------------------------------------------------------------

struct SignalFile {
  std::vector<double> samples;    // exactly one payload may be present
  std::vector<double> chebyshev;
  bool has_samples = false;
  bool has_chebyshev = false;
  double epsilon = -1.0;  // <= 0 means "not supplied"
};

inline std::string write_signal_json(const SignalFile& sf) {
  if (sf.has_samples == sf.has_chebyshev)
    throw Error("signal file needs exactly one of samples/chebyshev");
  json j;
  j["schema"] = signal_schema;
  json arr = json::array();
  for (double x : sf.has_samples ? sf.samples : sf.chebyshev)
    arr.push_back(format_real(x));
  j[sf.has_samples ? "samples" : "chebyshev"] = std::move(arr);
  if (sf.epsilon > 0.0) j["epsilon"] = format_real(sf.epsilon);
  return j.dump(2) + "\n";
}

inline SignalFile read_signal_json(const std::string& text) {
  const json j = detail::parse_document(text);
  try {
    if (!j.contains("schema") || !j.at("schema").is_string() ||
        j.at("schema").get<std::string>() != signal_schema)
      throw Error(std::string("expected schema ") + signal_schema);
    SignalFile sf;
    sf.has_samples = j.contains("samples");
    sf.has_chebyshev = j.contains("chebyshev");
    if (sf.has_samples == sf.has_chebyshev)
      throw Error("signal file needs exactly one of samples/chebyshev");
    if (sf.has_samples)
      sf.samples = detail::json_real_array(j.at("samples"));
    else
      sf.chebyshev = detail::json_real_array(j.at("chebyshev"));
    if (j.contains("epsilon")) sf.epsilon = detail::json_real(j, "epsilon");
    return sf;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad signal file: ") + e.what());
  }
}

inline void save_signal_file(const std::string& path, const SignalFile& sf) {
  detail::spill(path, write_signal_json(sf));
}

inline SignalFile load_signal_file(const std::string& path) {
  return read_signal_json(detail::slurp(path));
}

// instantiate a signal on a concrete grid; flag epsilon (if > 0) wins over
// the file's, which wins over the default margin
inline SignalSamples realize(const SignalFile& sf, const CircleGrid& grid,
                             double epsilon_override = -1.0) {
  const double eps = epsilon_override > 0.0 ? epsilon_override : sf.epsilon;
  if (sf.has_samples) return SignalSamples::from_samples(grid, sf.samples, eps);
  if (sf.has_chebyshev)
    return SignalSamples::from_chebyshev(grid, sf.chebyshev, eps);
  throw Error("signal file carries no payload");
}

}  // namespace qsphase
