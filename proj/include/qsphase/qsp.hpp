#pragma once

// the QSP side: phase sequences psi_k in (-pi/2, pi/2), the alternating
// unitary product U_d built from signal rotations W(x) and phase rotations
// e^{i psi Z}, the response Im(u_d), and the conjugation identity tying U_d
// to the nonlinear fourier series at z = exp(2 i theta), x = cos(theta).

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "qsphase/coeff_sequence.hpp"
#include "qsphase/errors.hpp"
#include "qsphase/grid.hpp"

namespace qsphase {

class PhaseSequence {
 public:
  PhaseSequence() = default;

  explicit PhaseSequence(std::vector<double> psi) : psi_(std::move(psi)) {
    for (double p : psi_)
      if (!std::isfinite(p) ||
          std::abs(p) >= std::numbers::pi / 2.0 - 1e-12)
        throw PhaseOutOfRange("phase " + std::to_string(p) +
                              " not strictly inside (-pi/2, pi/2)");
  }

  bool empty() const { return psi_.empty(); }
  std::size_t size() const { return psi_.size(); }
  int degree() const { return int(psi_.size()) - 1; }  // -1 when empty
  double at(std::size_t k) const {
    if (k >= psi_.size())
      throw DegreeOutOfRange("phase index " + std::to_string(k) +
                             " past degree " + std::to_string(degree()));
    return psi_[k];
  }
  const std::vector<double>& values() const { return psi_; }

 private:
  std::vector<double> psi_;
};

struct Unitary2 {
  cplx u00, u01, u10, u11;

  // max entrywise deviation of U U^dagger from the identity
  double unitarity_defect() const {
    const cplx r00 = u00 * std::conj(u00) + u01 * std::conj(u01) - 1.0;
    const cplx r01 = u00 * std::conj(u10) + u01 * std::conj(u11);
    const cplx r11 = u10 * std::conj(u10) + u11 * std::conj(u11) - 1.0;
    return std::max({std::abs(r00), std::abs(r01), std::abs(r11)});
  }
};

inline Unitary2 mul(const Unitary2& p, const Unitary2& q) {
  return {p.u00 * q.u00 + p.u01 * q.u10, p.u00 * q.u01 + p.u01 * q.u11,
          p.u10 * q.u00 + p.u11 * q.u10, p.u10 * q.u01 + p.u11 * q.u11};
}

// W(x) = [[x, i sqrt(1-x^2)], [i sqrt(1-x^2), x]], straight from x — no
// round trip through an angle
inline Unitary2 w_matrix(double x) {
  const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
  return {cplx(x, 0.0), cplx(0.0, s), cplx(0.0, s), cplx(x, 0.0)};
}

inline Unitary2 z_rotation(double psi) {
  return {std::polar(1.0, psi), cplx(0.0, 0.0), cplx(0.0, 0.0),
          std::polar(1.0, -psi)};
}

// U_0 = e^{i psi_0 Z}; U_k = e^{i psi_k Z} W U_{k-1} W e^{i psi_k Z}
inline Unitary2 qsp_unitary(const PhaseSequence& psi, int d, double x) {
  if (d < 0 || std::size_t(d) >= psi.size())
    throw DegreeOutOfRange("degree " + std::to_string(d) + " needs " +
                           std::to_string(d + 1) + " phases, have " +
                           std::to_string(psi.size()));
  if (!(x >= 0.0 && x <= 1.0))
    throw Error("abscissa " + std::to_string(x) + " outside [0, 1]");

  Unitary2 u = z_rotation(psi.at(0));
  const Unitary2 w = w_matrix(x);
  for (int k = 1; k <= d; ++k) {
    u = mul(w, mul(u, w));
    // the phase sandwich e^{i psi Z} U e^{i psi Z} only rotates the diagonal
    const cplx e2 = std::polar(1.0, 2.0 * psi.at(std::size_t(k)));
    u.u00 *= e2;
    u.u11 *= std::conj(e2);
  }
  return u;
}

inline double qsp_response(const PhaseSequence& psi, int d, double x) {
  return qsp_unitary(psi, d, x).u00.imag();
}

// ---- phases <-> coefficients ---------------------------------------------------

// F_n = i tan(psi_{|n|}) on the symmetric window [-K, K]
inline CoeffSequence phases_to_coeffs(const PhaseSequence& psi) {
  if (psi.empty()) return CoeffSequence();
  const int K = psi.degree();
  std::vector<cplx> entries(std::size_t(2 * K + 1));
  for (int n = -K; n <= K; ++n)
    entries[std::size_t(n + K)] =
        cplx(0.0, std::tan(psi.at(std::size_t(std::abs(n)))));
  return CoeffSequence(-K, std::move(entries));
}

// psi_n = arctan(F_n / i); demands F even and purely imaginary
inline PhaseSequence coeffs_to_phases(const CoeffSequence& F) {
  if (F.empty()) return PhaseSequence();
  const int K = F.max_abs_index();
  std::vector<double> psi(std::size_t(K + 1));
  for (int n = 0; n <= K; ++n) {
    const cplx fp = F.at(n), fm = F.at(-n);
    if (std::abs(fp - fm) > 1e-9)
      throw SymmetryViolation("sequence not even at index " +
                              std::to_string(n) + ": |F_n - F_-n| = " +
                              std::to_string(std::abs(fp - fm)));
    if (std::abs(fp.real()) > 1e-9 || std::abs(fm.real()) > 1e-9)
      throw SymmetryViolation("sequence not purely imaginary at index " +
                              std::to_string(n));
    psi[std::size_t(n)] = std::atan(0.5 * (fp.imag() + fm.imag()));
  }
  return PhaseSequence(std::move(psi));
}

// ---- the conjugation identity ---------------------------------------------------

// max entrywise deviation of M U_d M from e^{i d theta Z} G_d e^{i d theta Z}
// with z = exp(2 i theta), F_n = i tan(psi_{|n|}) on [-d, d]
inline double correspondence_check(const PhaseSequence& psi, int d, double x) {
  const Unitary2 u = qsp_unitary(psi, d, x);

  // lhs: conjugate by the hadamard-like M = 2^{-1/2} [[1, 1], [1, -1]]
  const Unitary2 m{cplx(std::numbers::sqrt2 / 2.0, 0.0),
                   cplx(std::numbers::sqrt2 / 2.0, 0.0),
                   cplx(std::numbers::sqrt2 / 2.0, 0.0),
                   cplx(-std::numbers::sqrt2 / 2.0, 0.0)};
  const Unitary2 lhs = mul(m, mul(u, m));

  // rhs: pointwise nonlinear fourier product at z = exp(2 i theta)
  const double theta = std::atan2(std::sqrt(std::max(0.0, 1.0 - x * x)), x);
  const cplx z = std::polar(1.0, 2.0 * theta);
  cplx alpha(1.0, 0.0), beta(0.0, 0.0);
  cplx zn = std::pow(z, -d);
  for (int n = -d; n <= d; ++n) {
    const cplx f(0.0, std::tan(psi.at(std::size_t(std::abs(n)))));
    const cplx dd = f * zn;
    const double k = 1.0 / std::sqrt(1.0 + std::norm(f));
    const cplx na = k * (alpha - beta * std::conj(dd));
    const cplx nb = k * (alpha * dd + beta);
    alpha = na;
    beta = nb;
    zn *= z;
  }
  const cplx e = std::polar(1.0, double(d) * theta);  // e^{i d theta}
  const Unitary2 rhs{e * alpha * e, e * beta * std::conj(e),
                     -std::conj(e) * std::conj(beta) * e,
                     std::conj(e) * std::conj(alpha) * std::conj(e)};

  return std::max({std::abs(lhs.u00 - rhs.u00), std::abs(lhs.u01 - rhs.u01),
                   std::abs(lhs.u10 - rhs.u10), std::abs(lhs.u11 - rhs.u11)});
}

}  // namespace qsphase
