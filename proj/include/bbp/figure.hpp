#pragma once

#include <string>

#include "bbp/cuts.hpp"

namespace bbp {

/// CSV dump of a two-variable set's geometry for external plotting:
/// sampled boundary-curve points, the chord/tangent anchor points A, B, C,
/// and every emitted cut with its coefficients and certificate.
/// Columns: kind,tag,x,y,cw,rhs,certificate (unused fields empty).
std::string figureDataCSV(const BandSet& set, int samplesPerArc = 200);

}  // namespace bbp
