#include "bbp/cuts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>

namespace bbp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kClipTol = 1e-12;
constexpr double kAcceptTol = 1e-9;

double slackAt(const Cut& cut, double x, double y) {
  return cut.cx * x + cut.cy * y + cut.cw * x * y - cut.rhs;
}

/// Clips {v in [0,1] : lo <= coef*v + off <= hi} to an interval; returns
/// false when empty.
bool clipLinear(double coef, double off, double lo, double hi, double& vLo,
                double& vHi) {
  vLo = 0.0;
  vHi = 1.0;
  if (std::abs(coef) < kClipTol) {
    return off >= lo - 1e-9 && off <= hi + 1e-9;
  }
  double a = (lo - off) / coef;
  double b = (hi - off) / coef;
  if (a > b) std::swap(a, b);
  vLo = std::max(0.0, a);
  vHi = std::min(1.0, b);
  return vHi - vLo >= -kClipTol;
}

struct SetFrame {
  // Hyperbola frame, defined when q != 0.
  double r = 0, s = 0, tau = 0;
  double t1 = 0, t2 = 0;  // product-level band, t1 <= t2
};

SetFrame frameOf(const BandSet& set) {
  SetFrame f;
  if (set.q != 0.0) {
    f.r = -set.b / set.q;
    f.s = -set.a / set.q;
    f.tau = (set.a * set.b - set.c * set.q) / (set.q * set.q);
    const double ta = f.tau + set.lo / set.q;
    const double tb = f.tau + set.hi / set.q;
    f.t1 = std::min(ta, tb);
    f.t2 = std::max(ta, tb);
  }
  return f;
}

}  // namespace

double minSlackOverSet(const BandSet& set, const Cut& cut) {
  double best = kInf;
  auto eval = [&](double x, double y) {
    best = std::min(best, slackAt(cut, x, y));
  };

  // Box edges: the set restricted to an edge is a linear condition on the
  // free coordinate, and the cut slack is linear there, so endpoints suffice.
  for (double yBar : {0.0, 1.0}) {
    double xLo, xHi;
    if (clipLinear(set.q * yBar + set.a, set.b * yBar + set.c, set.lo, set.hi,
                   xLo, xHi) &&
        xHi >= xLo) {
      eval(xLo, yBar);
      eval(xHi, yBar);
    }
  }
  for (double xBar : {0.0, 1.0}) {
    double yLo, yHi;
    if (clipLinear(set.q * xBar + set.b, set.a * xBar + set.c, set.lo, set.hi,
                   yLo, yHi) &&
        yHi >= yLo) {
      eval(xBar, yLo);
      eval(xBar, yHi);
    }
  }

  if (set.q != 0.0) {
    const SetFrame f = frameOf(set);
    std::vector<double> levels{f.t1};
    if (f.t2 - f.t1 > kClipTol) levels.push_back(f.t2);
    for (double t : levels) {
      const CurveBoxGeometry geo = intersectLevel(f.r, f.s, t);
      if (geo.box == CurveBoxGeometry::Case::DegenerateLines) {
        if (geo.hasVertical) {
          eval(geo.lineX, 0.0);
          eval(geo.lineX, 1.0);
        }
        if (geo.hasHorizontal) {
          eval(0.0, geo.lineY);
          eval(1.0, geo.lineY);
        }
        continue;
      }
      for (const auto& arc : geo.arcs) {
        auto yAt = [&](double x) {
          return std::clamp(f.s + t / (x - f.r), 0.0, 1.0);
        };
        eval(arc.A.x, arc.A.y);
        eval(arc.B.x, arc.B.y);
        // Stationary points of slack(x) = A*x + B/(x - r) + const on the arc.
        const double A = cut.cx + cut.cw * f.s;
        const double B = t * (cut.cy + cut.cw * f.r);
        if (std::abs(A) > kClipTol && B / A > 0) {
          const double off = std::sqrt(B / A);
          for (double xs : {f.r + off, f.r - off}) {
            if (xs > arc.xLo + kClipTol && xs < arc.xHi - kClipTol)
              eval(xs, yAt(xs));
          }
        }
      }
    }
  } else if (set.a != 0.0) {
    // Boundary lines x = (e - c - b*y)/a; slack is quadratic along them.
    std::vector<double> levels{set.lo};
    if (set.hi - set.lo > kClipTol) levels.push_back(set.hi);
    for (double e : levels) {
      const double alpha = (e - set.c) / set.a;
      const double beta = -set.b / set.a;
      double yLo, yHi;
      // 0 <= alpha + beta*y <= 1 and y in [0,1].
      if (!clipLinear(beta, alpha, 0.0, 1.0, yLo, yHi) || yHi < yLo) continue;
      auto evalLine = [&](double y) {
        eval(std::clamp(alpha + beta * y, 0.0, 1.0), y);
      };
      evalLine(yLo);
      evalLine(yHi);
      const double A2 = cut.cw * beta;
      const double A1 = cut.cx * beta + cut.cy + cut.cw * alpha;
      if (std::abs(A2) > kClipTol) {
        const double yv = -A1 / (2 * A2);
        if (yv > yLo + kClipTol && yv < yHi - kClipTol) evalLine(yv);
      }
    }
  }
  // Remaining kinds (horizontal band, whole box) are fully covered by the
  // box-edge sweep above.
  return best;
}

std::optional<Cut> validateCut(const BandSet& set, Cut cut) {
  const double cert = minSlackOverSet(set, cut);
  if (cert < -kAcceptTol || !std::isfinite(cert)) return std::nullopt;
  cut.certificate = cert;
  return cut;
}

namespace {

void normalizeCut(Cut& cut) {
  const double m =
      std::max({std::abs(cut.cx), std::abs(cut.cy), std::abs(cut.cw)});
  if (m > 0) {
    cut.cx /= m;
    cut.cy /= m;
    cut.cw /= m;
    cut.rhs /= m;
  }
}

struct CutCollector {
  const BandSet& set;
  CutSet out;
  std::map<std::tuple<long long, long long, long long, long long>, bool> seen;

  void tryCut(Cut cut) {
    normalizeCut(cut);
    auto key = std::make_tuple(llround(cut.cx * 1e9), llround(cut.cy * 1e9),
                               llround(cut.cw * 1e9), llround(cut.rhs * 1e9));
    if (seen.count(key)) return;
    if (auto ok = validateCut(set, cut)) {
      seen[key] = true;
      out.push_back(*ok);
    }
  }

  /// Candidate line alpha*x + beta*y = rho, both orientations.
  void tryLine(double alpha, double beta, double rho, const std::string& tag) {
    if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(rho))
      return;
    tryCut(Cut{alpha, beta, 0, rho, tag, 0});
    tryCut(Cut{-alpha, -beta, 0, -rho, tag, 0});
  }

  void lineThrough(const CurvePoint& p, const CurvePoint& q,
                   const std::string& tag) {
    const double alpha = q.y - p.y;
    const double beta = p.x - q.x;
    const double n = std::max(std::abs(alpha), std::abs(beta));
    if (n < kClipTol) return;
    tryLine(alpha / n, beta / n, (alpha * p.x + beta * p.y) / n, tag);
  }
};

}  // namespace

CutSet parabolaCuts(double p1, double p2, double yLo, double yHi) {
  CutSet out;
  if (yHi - yLo < 1e-9) return out;
  auto w = [&](double y) { return p1 * y + p2 * y * y; };
  auto slope = [&](double y) { return p1 + 2 * p2 * y; };
  auto add = [&](double cy, double cw, double rhs, const std::string& tag) {
    Cut cut{0, cy, cw, rhs, tag, 0};
    normalizeCut(cut);
    out.push_back(cut);
  };
  const double mc = p1 + p2 * (yLo + yHi);  // chord slope
  const double chordRhs = mc * yLo - w(yLo);
  auto tangent = [&](double y0, bool lower) {
    const double m0 = slope(y0);
    if (lower)
      add(-m0, 1.0, w(y0) - m0 * y0, "tangent");  // w >= tangent
    else
      add(m0, -1.0, m0 * y0 - w(y0), "tangent");  // w <= tangent
  };
  if (p2 > kClipTol) {
    add(mc, -1.0, chordRhs, "chord");  // w <= chord
    for (double y0 : {yLo, yHi, 0.5 * (yLo + yHi)}) tangent(y0, true);
  } else if (p2 < -kClipTol) {
    add(-mc, 1.0, -chordRhs, "chord");  // w >= chord
    for (double y0 : {yLo, yHi, 0.5 * (yLo + yHi)}) tangent(y0, false);
  } else {
    // Straight line w = p1*y: both directions are exact.
    add(p1, -1.0, 0.0, "line");
    add(-p1, 1.0, 0.0, "line");
  }
  return out;
}

RegionApprox outerApproximateRegion(const BandSet& set) {
  RegionApprox result;
  // Feasibility probe: the zero cut has slack 0 everywhere, so a finite
  // minimum certifies the set meets the box.
  if (!std::isfinite(minSlackOverSet(set, Cut{}))) {
    result.feasible = false;
    return result;
  }

  CutCollector col{set};

  // Exact band lines in (x, y, w): lo <= q*w + a*x + b*y + c <= hi.
  col.tryCut(Cut{set.a, set.b, set.q, set.lo - set.c, "band", 0});
  col.tryCut(Cut{-set.a, -set.b, -set.q, set.c - set.hi, "band", 0});

  if (set.q != 0.0) {
    const SetFrame f = frameOf(set);
    std::vector<double> levels{f.t1};
    if (f.t2 - f.t1 > kClipTol) levels.push_back(f.t2);
    for (double t : levels) {
      const CurveBoxGeometry geo = intersectLevel(f.r, f.s, t);
      if (geo.box == CurveBoxGeometry::Case::DegenerateLines) {
        std::vector<CurvePoint> pts;
        if (geo.hasVertical) {
          pts.push_back({geo.lineX, 0.0});
          pts.push_back({geo.lineX, 1.0});
          col.tryLine(1.0, 0.0, geo.lineX, "line");
        }
        if (geo.hasHorizontal) {
          pts.push_back({0.0, geo.lineY});
          pts.push_back({1.0, geo.lineY});
          col.tryLine(0.0, 1.0, geo.lineY, "line");
        }
        for (size_t u = 0; u < pts.size(); ++u)
          for (size_t v = u + 1; v < pts.size(); ++v)
            col.lineThrough(pts[u], pts[v], "line");
        continue;
      }
      for (const auto& arc : geo.arcs) {
        if (arc.xHi - arc.xLo > 1e-9) col.lineThrough(arc.A, arc.B, "chord");
        std::vector<CurvePoint> tangentAt{arc.A, arc.B};
        if (arc.C) tangentAt.push_back(*arc.C);
        for (const auto& p : tangentAt) {
          const double dx = p.x - f.r;
          if (std::abs(dx) < kClipTol) continue;
          const double m = -t / (dx * dx);
          const double n = std::max(1.0, std::abs(m));
          col.tryLine(m / n, -1.0 / n, (m * p.x - p.y) / n, "tangent");
        }
      }
    }
  } else if (set.a != 0.0) {
    // Slab piece: the (x, y) part is exact via the band lines; the product
    // dimension is outer-approximated by boundary-parabola cuts.
    std::vector<double> levels{set.lo};
    if (set.hi - set.lo > kClipTol) levels.push_back(set.hi);
    for (double e : levels) {
      const double alpha = (e - set.c) / set.a;
      const double beta = -set.b / set.a;
      double yLo, yHi;
      if (!clipLinear(beta, alpha, 0.0, 1.0, yLo, yHi) || yHi < yLo) continue;
      // w = x*y on the line x = alpha + beta*y.
      for (Cut cut : parabolaCuts(alpha, beta, yLo, yHi)) col.tryCut(cut);
    }
  } else if (set.b != 0.0) {
    // Horizontal band: exact product envelope over [0,1] x [yLo, yHi].
    double yLo = 0.0, yHi = 1.0;
    if (clipLinear(set.b, set.c, set.lo, set.hi, yLo, yHi)) {
      // w >= yLo*x ; w >= yHi*x + y - yHi ; w <= yHi*x ; w <= yLo*x + y - yLo
      col.tryCut(Cut{-yLo, 0, 1, 0, "mccormick", 0});
      col.tryCut(Cut{-yHi, -1, 1, -yHi, "mccormick", 0});
      col.tryCut(Cut{yHi, 0, -1, 0, "mccormick", 0});
      col.tryCut(Cut{yLo, 1, -1, yLo, "mccormick", 0});
    }
  }

  result.cuts = std::move(col.out);
  return result;
}

}  // namespace bbp
