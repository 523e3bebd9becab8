#pragma once

#include <Eigen/Dense>
#include <vector>

#include "bbp/scaling.hpp"

namespace bbp {

/// Modal data for one measured vibration mode.
struct FEMode {
  double lambda = 0.0;              // squared angular frequency
  std::vector<bool> instrumented;   // length m, true where the DOF is measured
  Eigen::VectorXd measuredShape;    // values at instrumented DOFs, in order
};

/// Finite-element model-updating input: mass and stiffness matrices plus
/// measured modes. Stiffness is K0 + sum_i x_i * Ki with x in [-1, 1]^n1;
/// unmeasured mode-shape entries range in [-2, 2].
struct FEInput {
  int dofCount = 0;  // m
  Eigen::MatrixXd mass;
  Eigen::MatrixXd stiffness0;
  std::vector<Eigen::MatrixXd> stiffnessUpdates;  // K1..Kn1
  std::vector<FEMode> modes;
};

std::vector<std::string> validateFE(const FEInput& fe);

/// Converts the modal dynamic residual equations into a normalized residual
/// BBP: one equality row per (mode, DOF) with z+/z- channels bounded by
/// interval arithmetic, objective = total residual mass. Optional measurement
/// noise (normal, variance = noiseFraction * |value|) perturbs lambda and the
/// measured shape entries before conversion.
NormalizedInstance fromFE(const FEInput& fe, double noiseFraction = 0.0,
                          unsigned seed = 0);

}  // namespace bbp
