#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bbp/curve.hpp"

namespace bbp {

/// Linear inequality cx*x + cy*y + cw*w >= rhs over a two-variable set with
/// w = x*y. Certificate is the certified minimum slack over the exact set.
struct Cut {
  double cx = 0, cy = 0, cw = 0, rhs = 0;
  std::string tag;          // chord | tangent | band | line | mccormick
  double certificate = 0;
};

using CutSet = std::vector<Cut>;

/// Exact two-variable set lo <= q*x*y + a*x + b*y + c <= hi on [0,1]^2,
/// together with the product dimension w = x*y. lo = hi = 0 is the plain
/// equality curve.
struct BandSet {
  double q = 0, a = 0, b = 0, c = 0;
  double lo = 0, hi = 0;
};

/// Minimum of cx*x + cy*y + cw*x*y - rhs over the set; +infinity when the
/// set misses the box. Closed-form: box edges, boundary level arcs and
/// stationary points, no sampling.
double minSlackOverSet(const BandSet& set, const Cut& cut);

/// Accepts the cut iff its exact minimum slack is >= -1e-9; on success the
/// returned cut carries the certificate.
std::optional<Cut> validateCut(const BandSet& set, Cut cut);

struct RegionApprox {
  CutSet cuts;
  bool feasible = true;  // false: the set misses the box entirely
};

/// Certified polyhedral outer approximation of {(x, y, x*y) : (x,y) in set}:
/// exact w-band lines plus chord/tangent cuts of the boundary level curves,
/// every cut validated against the exact set before emission.
RegionApprox outerApproximateRegion(const BandSet& set);

/// Chord + endpoint/slope-matched tangents for the parabola w = p1*y + p2*y^2
/// on y in [yLo, yHi], as cuts in (y, w) (cx = 0). All cuts exact for the arc.
CutSet parabolaCuts(double p1, double p2, double yLo, double yHi);

}  // namespace bbp
