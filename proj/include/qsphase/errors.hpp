#pragma once

#include <stdexcept>
#include <string>

namespace qsphase {

// everything thrown by the library derives from this; the what() string
// carries the measured quantity that tripped the check.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define QSPHASE_ERROR_TYPE(Name) \
  struct Name : Error {          \
    explicit Name(const std::string& what) : Error(what) {} \
  }

QSPHASE_ERROR_TYPE(NonRealInput);        // hilbert transform fed a non-real function
QSPHASE_ERROR_TYPE(GridTooCoarse);       // bad grid size or bandwidth check failed
QSPHASE_ERROR_TYPE(GridMismatch);        // operands live on different grids
QSPHASE_ERROR_TYPE(NonUnimodularFactor); // modulation factor off the unit circle, or non-finite entry
QSPHASE_ERROR_TYPE(OracleTooLarge);      // multilinear brute force beyond its caps
QSPHASE_ERROR_TYPE(SignalTooLarge);      // sup |f| too close to the 2^{-1/2} threshold
QSPHASE_ERROR_TYPE(NoConvergence);       // fixed point ran out of iterations
QSPHASE_ERROR_TYPE(ContractionBroken);   // fixed-point residuals stopped contracting
QSPHASE_ERROR_TYPE(DegenerateA);         // mean of a too small to divide by
QSPHASE_ERROR_TYPE(TailNotDecaying);     // layer stripping stuck above its tail budget
QSPHASE_ERROR_TYPE(SymmetryViolation);   // sequence not even / not purely imaginary as required
QSPHASE_ERROR_TYPE(DegreeOutOfRange);    // index past the available phases/coefficients
QSPHASE_ERROR_TYPE(NonPositiveAInfinity); // mean of a not positive real
QSPHASE_ERROR_TYPE(PhaseOutOfRange);     // |psi| >= pi/2

#undef QSPHASE_ERROR_TYPE

}  // namespace qsphase
