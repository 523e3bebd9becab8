#pragma once

#include "bbp/instance.hpp"

namespace bbp {

/// Per-variable affine maps v = alpha * v' + beta taking the unit box back to
/// the original bounds. Variables with alpha = 0 were fixed and eliminated.
struct ScalingRecord {
  int origN1 = 0;
  int origN2 = 0;
  int newN1 = 0;
  int newN2 = 0;
  Eigen::VectorXd alpha;        // length origN1 + origN2
  Eigen::VectorXd beta;
  std::vector<int> keptIndex;   // original -> new combined index, -1 if fixed

  bool isIdentity() const;
  /// Maps a point of the normalized instance back to original coordinates.
  Eigen::VectorXd unnormalizePoint(const Eigen::VectorXd& unitPoint) const;
};

struct NormalizedInstance {
  BBPInstance instance;  // all bounds [0, 1]
  ScalingRecord scaling;
};

/// Rescales every variable to [0, 1]; fixed variables are folded into
/// constants and eliminated. Residual channel bounds are kept as stated.
NormalizedInstance normalizeBox(const BBPInstance& inst);

/// Slack conversion of an inequality row over a box.
struct SlackConversion {
  BilinearForm equality;  // slack term not included
  bool slackNeeded = false;
  int slackSign = 0;      // equality + slackSign * s = 0
  double slackLo = 0.0;
  double slackHi = 0.0;
};

/// sense is '<', '>' or '='. Slack bounds come from interval arithmetic over
/// the box, clipped to the feasible sign. Throws on non-finite ranges.
SlackConversion inequalityToEquality(const BilinearForm& form, char sense,
                                     const Box& box, int n1);

}  // namespace bbp
