#pragma once

#include "bbp/instance.hpp"

namespace bbp {

struct GenShape {
  int n1 = 1;
  int n2 = 1;
  int rows = 1;
  double density = 1.0;  // target bilinear terms per row
};

/// Deterministic random residual-form instance on the unit box: each row is
/// a sparse bilinear equality with z+/z- channels, objective = total residual
/// mass. Rows are planted feasible at a hidden interior point; noise perturbs
/// the row constants multiplicatively (variance = noise * |constant|).
/// bandFraction scales the residual bounds relative to the row's range, so
/// the residual band is strictly inside the box image of the row.
BBPInstance generateInstance(const GenShape& shape, double noise,
                             unsigned seed, double bandFraction = 0.35);

}  // namespace bbp
