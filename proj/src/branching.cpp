#include "bbp/branching.hpp"

#include <algorithm>
#include <cmath>

#include "bbp/curve.hpp"

namespace bbp {

namespace {

double shoelace(const std::vector<CurvePoint>& poly) {
  double a = 0.0;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % n];
    a += p.x * q.y - q.x * p.y;
  }
  return std::abs(a) / 2.0;
}

/// Counter-clockwise convex ordering of up to a handful of points.
std::vector<CurvePoint> orderConvex(std::vector<CurvePoint> pts) {
  CurvePoint c{0, 0};
  for (const auto& p : pts) {
    c.x += p.x / pts.size();
    c.y += p.y / pts.size();
  }
  std::sort(pts.begin(), pts.end(), [&](const CurvePoint& u,
                                        const CurvePoint& v) {
    return std::atan2(u.y - c.y, u.x - c.x) < std::atan2(v.y - c.y, v.x - c.x);
  });
  return pts;
}

std::optional<CurvePoint> lineIntersect(double m1, const CurvePoint& p1,
                                        double m2, const CurvePoint& p2) {
  // y = p.y + m (x - p.x) for both lines.
  if (std::abs(m1 - m2) < 1e-12) return std::nullopt;
  const double x =
      (p2.y - m2 * p2.x - p1.y + m1 * p1.x) / (m1 - m2);
  return CurvePoint{x, p1.y + m1 * (x - p1.x)};
}

}  // namespace

std::optional<DisjunctionStat> analyzeDisjunction(const HullPiece& piece,
                                                  const Box& nodeBox, int n1,
                                                  double gamma) {
  if (!piece.isPair) return std::nullopt;
  const BandSet& set = piece.set;
  if (set.q == 0.0) return std::nullopt;

  // Work on the level curve of the most representative admissible residual
  // (zero when the band contains it).
  const double e0 = std::clamp(0.0, set.lo, set.hi);
  const double r = -set.b / set.q;
  const double s = -set.a / set.q;
  const double t =
      (set.a * set.b - (set.c - e0) * set.q) / (set.q * set.q);
  const CurveBoxGeometry geo = intersectLevel(r, s, t);

  const int xv = piece.xVar;
  const double lo = nodeBox.lo[xv];
  const double width = nodeBox.hi[xv] - nodeBox.lo[xv];
  auto toOrig = [&](double unit) { return lo + width * unit; };

  DisjunctionStat stat;
  stat.var = xv;

  switch (geo.box) {
    case CurveBoxGeometry::Case::OneBranch: {
      const BranchArc& arc = geo.arcs[0];
      const double xa = arc.A.x, xb = arc.B.x;
      const double xc = arc.C ? arc.C->x : 0.5 * (xa + xb);
      stat.lo = toOrig(xc - gamma * (xc - xa));
      stat.hi = toOrig(xc + gamma * (xb - xc));
      if (arc.C && xb - xa > 1e-9) {
        auto slope = [&](double x) { return -t / ((x - r) * (x - r)); };
        const CurvePoint A = arc.A, B = arc.B, C = *arc.C;
        auto P1 = lineIntersect(slope(A.x), A, slope(C.x), C);
        auto P2 = lineIntersect(slope(C.x), C, slope(B.x), B);
        std::vector<CurvePoint> poly{A};
        if (P1) poly.push_back(*P1);
        if (P2) poly.push_back(*P2);
        poly.push_back(B);
        stat.area = shoelace(poly);
      }
      break;
    }
    case CurveBoxGeometry::Case::TwoBranches: {
      const BranchArc& left = geo.arcs[0];
      const BranchArc& right = geo.arcs[1];
      stat.lo = toOrig(std::min(left.xHi, right.xLo));
      stat.hi = toOrig(std::max(left.xHi, right.xLo));
      stat.area = shoelace(orderConvex({left.A, left.B, right.A, right.B}));
      break;
    }
    case CurveBoxGeometry::Case::DegenerateLines: {
      if (!geo.hasVertical) return std::nullopt;
      stat.lo = stat.hi = toOrig(geo.lineX);
      if (geo.hasHorizontal) {
        stat.area = shoelace(orderConvex({{geo.lineX, 0.0},
                                          {geo.lineX, 1.0},
                                          {0.0, geo.lineY},
                                          {1.0, geo.lineY}}));
      }
      break;
    }
    case CurveBoxGeometry::Case::Empty:
    default:
      return std::nullopt;
  }
  stat.lo = std::clamp(stat.lo, nodeBox.lo[xv], nodeBox.hi[xv]);
  stat.hi = std::clamp(stat.hi, nodeBox.lo[xv], nodeBox.hi[xv]);
  if (stat.hi < stat.lo) std::swap(stat.lo, stat.hi);
  return stat;
}

namespace {

BranchDecision widestBisection(const Box& nodeBox, int n1) {
  BranchDecision d;
  d.rule = "bisection";
  double best = -1.0;
  for (int i = 0; i < n1; ++i) {
    const double w = nodeBox.hi[i] - nodeBox.lo[i];
    if (w > best + 1e-15) {
      best = w;
      d.var = i;
    }
  }
  d.point = 0.5 * (nodeBox.lo[d.var] + nodeBox.hi[d.var]);
  return d;
}

}  // namespace

BranchDecision algorithm1(const std::vector<DisjunctionStat>& stats,
                          const Box& nodeBox, int n1, int K, double eps1,
                          double eps2) {
  if (stats.empty()) return widestBisection(nodeBox, n1);

  std::vector<double> p(n1, 0.0);
  for (const auto& st : stats)
    if (st.var >= 0 && st.var < n1) p[st.var] += 1.0;
  double total = 0.0;
  for (double v : p) total += v;
  if (total <= 0.0) return widestBisection(nodeBox, n1);

  std::vector<std::vector<double>> A(n1, std::vector<double>(K, 0.0));
  for (const auto& st : stats) {
    const int i = st.var;
    if (i < 0 || i >= n1) continue;
    const double lo = nodeBox.lo[i];
    const double w = (nodeBox.hi[i] - lo) / K;
    if (w <= 0.0) continue;
    for (int k = 0; k < K; ++k) {
      const double cLo = lo + k * w;
      const double cHi = lo + (k + 1) * w;
      if (st.lo <= cHi && st.hi >= cLo) A[i][k] += st.area;
    }
  }

  int bi = -1, bk = -1;
  double bestA = -1.0;
  for (int i = 0; i < n1; ++i) {
    if (p[i] / total < eps1) continue;  // irrelevant variable
    for (int k = 0; k < K; ++k) {
      if (A[i][k] > bestA + 1e-15) {
        bestA = A[i][k];
        bi = i;
        bk = k;
      }
    }
  }
  if (bi < 0 || bestA < eps2) return widestBisection(nodeBox, n1);

  BranchDecision d;
  d.rule = "alg1";
  d.var = bi;
  const double lo = nodeBox.lo[bi];
  const double w = (nodeBox.hi[bi] - lo) / K;
  d.point = lo + (bk + 0.5) * w;
  return d;
}

int gapErrorSelect(
    const Eigen::VectorXd& x, const Eigen::VectorXd& y,
    const std::vector<std::pair<std::pair<int, int>, double>>& wValues,
    const Box& nodeBox, int n1, bool branchY) {
  int bestEdgeX = -1, bestEdgeY = -1;
  double bestErr = 1e-12;
  for (const auto& [edge, wBar] : wValues) {
    const double err = std::abs(wBar - x[edge.first] * y[edge.second]);
    if (err > bestErr + 1e-15) {
      bestErr = err;
      bestEdgeX = edge.first;
      bestEdgeY = edge.second;
    }
  }
  if (bestEdgeX >= 0) return branchY ? n1 + bestEdgeY : bestEdgeX;
  // Every product exact: widest domain on the requested side.
  const int from = branchY ? n1 : 0;
  const int to = branchY ? static_cast<int>(nodeBox.lo.size()) : n1;
  int best = from;
  double bw = -1.0;
  for (int v = from; v < to; ++v) {
    const double w = nodeBox.hi[v] - nodeBox.lo[v];
    if (w > bw + 1e-15) {
      bw = w;
      best = v;
    }
  }
  return best;
}

double branchPoint(const std::string& rule, int var, const Box& nodeBox,
                   double relaxValue, std::optional<double> incumbentValue) {
  const double lo = nodeBox.lo[var], hi = nodeBox.hi[var];
  const double width = hi - lo;
  const double pad = 1e-6 * width;
  if (rule == "bisect" || rule == "bisection") return 0.5 * (lo + hi);
  if (rule == "incumbent" && incumbentValue &&
      *incumbentValue > lo + pad && *incumbentValue < hi - pad)
    return *incumbentValue;
  return std::clamp(relaxValue, lo + pad, hi - pad);
}

}  // namespace bbp
