#include "bbp/curve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bbp {

namespace {

constexpr double kGeomTol = 1e-12;

/// Arcs of (x - r)(y - s) = t with t > 0 clipped to the unit box.
/// Branch "ne" lives at x > r, y > s; branch "sw" at x < r, y < s.
/// On both, y(x) = s + t/(x - r) is strictly decreasing.
std::vector<BranchArc> clipPositiveLevel(double r, double s, double t) {
  std::vector<BranchArc> arcs;
  auto tryArc = [&](double xLo, double xHi) {
    if (xHi - xLo < -kGeomTol) return;
    xLo = std::clamp(xLo, 0.0, 1.0);
    xHi = std::clamp(xHi, 0.0, 1.0);
    if (xHi < xLo) return;
    BranchArc arc;
    arc.xLo = xLo;
    arc.xHi = xHi;
    auto yAt = [&](double x) {
      return std::clamp(s + t / (x - r), 0.0, 1.0);
    };
    arc.A = {xLo, yAt(xLo)};
    arc.B = {xHi, yAt(xHi)};
    if (xHi - xLo > kGeomTol) {
      const double m = (arc.B.y - arc.A.y) / (arc.B.x - arc.A.x);
      if (m < -kGeomTol) {
        const double off = std::sqrt(-t / m);
        double xC = xLo > r ? r + off : r - off;  // same side as the branch
        xC = std::clamp(xC, xLo, xHi);
        arc.C = CurvePoint{xC, yAt(xC)};
      }
    }
    if (!arc.C) arc.C = arc.A;
    arcs.push_back(arc);
  };

  // North-east branch: x in (r, inf), y in (s, inf).
  if (s < 1.0) {
    const double xLo = std::max(0.0, r + t / (1.0 - s));
    const double xHi = s < 0.0 ? std::min(1.0, r + t / (-s)) : 1.0;
    tryArc(xLo, xHi);
  }
  // South-west branch: x in (-inf, r), y in (-inf, s).
  if (s > 0.0) {
    const double xLo = s > 1.0 ? std::max(0.0, r + t / (1.0 - s)) : 0.0;
    const double xHi = std::min(1.0, r - t / s);
    tryArc(xLo, xHi);
  }
  std::sort(arcs.begin(), arcs.end(),
            [](const BranchArc& u, const BranchArc& v) { return u.xLo < v.xLo; });
  return arcs;
}

CurvePoint reflectX(const CurvePoint& p) { return {1.0 - p.x, p.y}; }

}  // namespace

CanonicalCurve canonicalize(double q, double a, double b, double c) {
  CanonicalCurve k;
  k.q = q;
  k.a = a;
  k.b = b;
  k.c = c;
  if (q != 0.0) {
    k.kind = CanonicalCurve::Kind::Hyperbola;
    k.r = -b / q;
    k.s = -a / q;
    k.tau = (a * b - c * q) / (q * q);
  } else if (a != 0.0) {
    // x = (-c - b*y)/a, so w = x*y = (-c/a)*y - (b/a)*y^2.
    k.kind = CanonicalCurve::Kind::Parabola;
    k.p1 = -c / a;
    k.p2 = -b / a;
  } else if (b != 0.0) {
    k.kind = CanonicalCurve::Kind::LineSet;
    k.yFixed = -c / b;
  } else if (c == 0.0) {
    k.kind = CanonicalCurve::Kind::ProductSurface;
  } else {
    throw std::invalid_argument(
        "canonicalize: constant-only nonzero row is infeasible");
  }
  return k;
}

CurveBoxGeometry intersectLevel(double r, double s, double t) {
  CurveBoxGeometry g;
  if (std::abs(t) < kGeomTol) {
    g.hasVertical = r >= -kGeomTol && r <= 1.0 + kGeomTol;
    g.hasHorizontal = s >= -kGeomTol && s <= 1.0 + kGeomTol;
    g.lineX = std::clamp(r, 0.0, 1.0);
    g.lineY = std::clamp(s, 0.0, 1.0);
    g.box = (g.hasVertical || g.hasHorizontal)
                ? CurveBoxGeometry::Case::DegenerateLines
                : CurveBoxGeometry::Case::Empty;
    return g;
  }
  if (t > 0) {
    g.arcs = clipPositiveLevel(r, s, t);
  } else {
    // Reflect x -> 1 - x, which maps the box to itself and flips the sign
    // of the product: ((1-x) - (1-r))(y - s) = -t > 0.
    auto arcs = clipPositiveLevel(1.0 - r, s, -t);
    for (auto& arc : arcs) {
      BranchArc back;
      back.xLo = 1.0 - arc.xHi;
      back.xHi = 1.0 - arc.xLo;
      back.A = reflectX(arc.B);
      back.B = reflectX(arc.A);
      back.C = arc.C ? std::optional<CurvePoint>(reflectX(*arc.C)) : arc.C;
      g.arcs.push_back(back);
    }
    std::sort(g.arcs.begin(), g.arcs.end(),
              [](const BranchArc& u, const BranchArc& v) {
                return u.xLo < v.xLo;
              });
  }
  g.box = g.arcs.empty() ? CurveBoxGeometry::Case::Empty
          : g.arcs.size() == 1 ? CurveBoxGeometry::Case::OneBranch
                               : CurveBoxGeometry::Case::TwoBranches;
  return g;
}

CurveBoxGeometry intersectBox(const CanonicalCurve& curve) {
  using Kind = CanonicalCurve::Kind;
  switch (curve.kind) {
    case Kind::Hyperbola:
      return intersectLevel(curve.r, curve.s, curve.tau);
    case Kind::Parabola: {
      // x(y) = (-c - b*y)/a must lie in [0,1].
      CurveBoxGeometry g;
      double yLo = 0.0, yHi = 1.0;
      const double a = curve.a, b = curve.b, c = curve.c;
      // 0 <= (-c - b*y)/a <= 1  <=>  two linear conditions on y.
      auto clipLinear = [&](double coef, double rhs) {
        // coef * y <= rhs
        if (std::abs(coef) < kGeomTol) {
          if (rhs < -kGeomTol) yLo = 1.0, yHi = 0.0;
          return;
        }
        if (coef > 0)
          yHi = std::min(yHi, rhs / coef);
        else
          yLo = std::max(yLo, rhs / coef);
      };
      if (a > 0) {
        clipLinear(b, -c);       // x >= 0
        clipLinear(-b, c + a);   // x <= 1
      } else {
        clipLinear(-b, c);       // x >= 0
        clipLinear(b, -c - a);   // x <= 1
      }
      if (yHi - yLo < -kGeomTol) {
        g.box = CurveBoxGeometry::Case::Empty;
      } else {
        g.paraYLo = std::clamp(yLo, 0.0, 1.0);
        g.paraYHi = std::clamp(yHi, 0.0, 1.0);
        g.box = CurveBoxGeometry::Case::OneBranch;
      }
      return g;
    }
    case Kind::LineSet: {
      CurveBoxGeometry g;
      if (curve.yFixed >= -kGeomTol && curve.yFixed <= 1.0 + kGeomTol) {
        g.hasHorizontal = true;
        g.lineY = std::clamp(curve.yFixed, 0.0, 1.0);
        g.box = CurveBoxGeometry::Case::DegenerateLines;
      }
      return g;
    }
    case Kind::ProductSurface:
    default:
      return {};
  }
}

}  // namespace bbp
