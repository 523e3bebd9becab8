#pragma once

#include <algorithm>
#include <cmath>

#include "bbp/instance.hpp"

namespace bbp {

/// Closed interval with the usual outward-rounding-free arithmetic; sound for
/// range bounding at the scales this solver works at.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval operator+(const Interval& o) const { return {lo + o.lo, hi + o.hi}; }
  Interval operator+(double c) const { return {lo + c, hi + c}; }
  Interval operator*(double c) const {
    return c >= 0 ? Interval{lo * c, hi * c} : Interval{hi * c, lo * c};
  }
  Interval operator*(const Interval& o) const {
    const double p[4] = {lo * o.lo, lo * o.hi, hi * o.lo, hi * o.hi};
    return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
  }
};

/// Range of a bilinear form over a box (sound, not exact: each occurrence of a
/// variable is relaxed independently).
inline Interval rangeOver(const BilinearForm& f, const Box& box, int n1) {
  Interval r{f.constant, f.constant};
  for (const auto& t : f.qTerms) {
    Interval xi{box.lo[t.i], box.hi[t.i]};
    Interval yj{box.lo[n1 + t.j], box.hi[n1 + t.j]};
    r = r + (xi * yj) * t.value;
  }
  for (const auto& [i, c] : f.aLin) r = r + Interval{box.lo[i], box.hi[i]} * c;
  for (const auto& [j, c] : f.bLin)
    r = r + Interval{box.lo[n1 + j], box.hi[n1 + j]} * c;
  return r;
}

}  // namespace bbp
