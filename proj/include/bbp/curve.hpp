#pragma once

#include <optional>
#include <vector>

namespace bbp {

/// Two-variable set q*x*y + a*x + b*y + c = 0 after canonical reduction.
/// For q != 0 it is the hyperbola (x - r)(y - s) = tau (tau = 0 degenerates
/// into the line pair x = r, y = s). For q = 0 with a != 0 the set is the
/// line x = (-c - b*y)/a and the product w = x*y traces the parabola
/// w = p1*y + p2*y^2. For q = a = 0, b != 0 the set fixes y = -c/b. With all
/// coefficients zero the set is the whole box (product surface w = x*y).
struct CanonicalCurve {
  enum class Kind { Hyperbola, Parabola, LineSet, ProductSurface };
  Kind kind = Kind::ProductSurface;
  double q = 0, a = 0, b = 0, c = 0;  // originating coefficients
  double r = 0, s = 0, tau = 0;       // hyperbola parameters (q != 0)
  double p1 = 0, p2 = 0;              // parabola w(y) coefficients (q=0, a!=0)
  double yFixed = 0;                  // line y = yFixed (q=0, a=0, b!=0)
};

/// Throws std::invalid_argument when the set is trivially empty
/// (q = a = b = 0, c != 0).
CanonicalCurve canonicalize(double q, double a, double b, double c);

struct CurvePoint {
  double x = 0, y = 0;
};

/// One connected arc of a hyperbola-level curve clipped to the unit box:
/// y = s + t/(x - r) for x in [xLo, xHi], with endpoints on the box boundary.
struct BranchArc {
  double xLo = 0, xHi = 0;
  CurvePoint A, B;                  // A at xLo, B at xHi
  std::optional<CurvePoint> C;      // slope-matched point (tangent || chord)
};

struct CurveBoxGeometry {
  enum class Case { Empty, OneBranch, TwoBranches, DegenerateLines };
  Case box = Case::Empty;
  std::vector<BranchArc> arcs;      // hyperbola case, "lower" branch first
  // DegenerateLines (tau = 0): segments x = r and/or y = s inside the box.
  bool hasVertical = false;         // x = r, r in [0,1]
  bool hasHorizontal = false;       // y = s, s in [0,1]
  double lineX = 0, lineY = 0;
  // Parabola case: y-range where x(y) stays inside [0,1].
  double paraYLo = 0, paraYHi = 0;
};

/// Clips the level set (x - r)(y - s) = t (any sign of t) to [0,1]^2.
/// For parabola/line-set kinds the level set a*x + b*y + c = 0 is clipped
/// instead. Product surfaces report Empty (no curve to intersect).
CurveBoxGeometry intersectBox(const CanonicalCurve& curve);

/// Same clipping for an arbitrary product level (x - r)(y - s) = t of a
/// hyperbola-kind curve; used for residual-band boundary levels.
CurveBoxGeometry intersectLevel(double r, double s, double t);

}  // namespace bbp
