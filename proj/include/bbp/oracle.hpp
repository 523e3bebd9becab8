#pragma once

#include "bbp/instance.hpp"

namespace bbp {

struct OracleResult {
  double value = 0.0;
  Eigen::VectorXd point;  // combined (x, y)
  long gridPoints = 0;
  bool feasible = false;
};

/// Independent brute-force ground truth: enumerates x over a uniform grid of
/// the given step, solves the exact LP in (y, z) at every grid point, and
/// returns the best. Throws std::runtime_error when the grid would exceed
/// `cap` points.
OracleResult oracleSolve(const BBPInstance& inst, double gridStep,
                         long cap = 4'000'000);

}  // namespace bbp
