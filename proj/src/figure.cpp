#include "bbp/figure.hpp"

#include <cmath>
#include <sstream>

#include "bbp/curve.hpp"

namespace bbp {

std::string figureDataCSV(const BandSet& set, int samplesPerArc) {
  std::ostringstream os;
  os.precision(12);
  os << "kind,tag,x,y,cw,rhs,certificate\n";

  auto emitPoint = [&](const std::string& kind, const std::string& tag,
                       double x, double y) {
    os << kind << "," << tag << "," << x << "," << y << ",,,\n";
  };

  if (set.q != 0.0) {
    const double r = -set.b / set.q;
    const double s = -set.a / set.q;
    std::vector<std::pair<double, std::string>> levels{
        {set.lo, "level-lo"}};
    if (set.hi - set.lo > 1e-12) levels.push_back({set.hi, "level-hi"});
    for (const auto& [e, tag] : levels) {
      const double t =
          (set.a * set.b - (set.c - e) * set.q) / (set.q * set.q);
      const CurveBoxGeometry geo = intersectLevel(r, s, t);
      for (const auto& arc : geo.arcs) {
        for (int k = 0; k <= samplesPerArc; ++k) {
          const double x =
              arc.xLo + (arc.xHi - arc.xLo) * k / samplesPerArc;
          const double y = std::clamp(s + t / (x - r), 0.0, 1.0);
          emitPoint("curve", tag, x, y);
        }
        emitPoint("anchor", tag + ":A", arc.A.x, arc.A.y);
        emitPoint("anchor", tag + ":B", arc.B.x, arc.B.y);
        if (arc.C) emitPoint("anchor", tag + ":C", arc.C->x, arc.C->y);
      }
      if (geo.box == CurveBoxGeometry::Case::DegenerateLines) {
        if (geo.hasVertical) {
          emitPoint("segment", tag, geo.lineX, 0.0);
          emitPoint("segment", tag, geo.lineX, 1.0);
        }
        if (geo.hasHorizontal) {
          emitPoint("segment", tag, 0.0, geo.lineY);
          emitPoint("segment", tag, 1.0, geo.lineY);
        }
      }
    }
  }

  const RegionApprox approx = outerApproximateRegion(set);
  if (!approx.feasible) {
    os << "status,empty,,,,,\n";
    return os.str();
  }
  for (const Cut& cut : approx.cuts) {
    os << "cut," << cut.tag << "," << cut.cx << "," << cut.cy << ","
       << cut.cw << "," << cut.rhs << "," << cut.certificate << "\n";
  }
  return os.str();
}

}  // namespace bbp
