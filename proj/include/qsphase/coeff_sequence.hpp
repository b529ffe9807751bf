#pragma once

// finitely supported complex sequence on an integer window [lo, hi].
// entries outside the window are implicitly zero; an empty sequence is the
// zero sequence.

#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "qsphase/errors.hpp"
#include "qsphase/grid.hpp"

namespace qsphase {

class CoeffSequence {
 public:
  CoeffSequence() = default;

  CoeffSequence(int lo, std::vector<cplx> entries)
      : lo_(lo), entries_(std::move(entries)) {
    for (const cplx& c : entries_)
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw NonUnimodularFactor("non-finite sequence entry");
  }

  bool empty() const { return entries_.empty(); }
  int lo() const { return lo_; }
  int hi() const { return lo_ + int(entries_.size()) - 1; }
  std::size_t width() const { return entries_.size(); }

  cplx at(int n) const {
    if (empty() || n < lo_ || n > hi()) return cplx(0.0, 0.0);
    return entries_[std::size_t(n - lo_)];
  }
  const std::vector<cplx>& entries() const { return entries_; }

  double norm_l1() const {
    double s = 0.0;
    for (const cplx& c : entries_) s += std::abs(c);
    return s;
  }
  double norm_l2() const {
    double s = 0.0;
    for (const cplx& c : entries_) s += std::norm(c);
    return std::sqrt(s);
  }
  double norm_sup() const {
    double s = 0.0;
    for (const cplx& c : entries_) s = std::max(s, std::abs(c));
    return s;
  }

  // largest |index| in the window; 0 for the empty sequence
  int max_abs_index() const {
    if (empty()) return 0;
    return std::max(std::abs(lo()), std::abs(hi()));
  }

 private:
  int lo_ = 0;
  std::vector<cplx> entries_;
};

}  // namespace qsphase
