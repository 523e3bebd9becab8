#include "bbp/oracle.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "bbp/bnb.hpp"

namespace bbp {

OracleResult oracleSolve(const BBPInstance& inst, double gridStep, long cap) {
  if (gridStep <= 0) throw std::invalid_argument("oracle: grid step <= 0");
  const int n1 = inst.n1;

  std::vector<long> steps(n1);
  double total = 1.0;
  for (int i = 0; i < n1; ++i) {
    const double width = inst.upper[i] - inst.lower[i];
    steps[i] = std::max<long>(1, std::lround(width / gridStep));
    total *= static_cast<double>(steps[i] + 1);
  }
  if (total > static_cast<double>(cap)) {
    std::ostringstream os;
    os << "oracle: grid of " << total << " points exceeds cap " << cap;
    throw std::runtime_error(os.str());
  }

  OracleResult best;
  best.gridPoints = static_cast<long>(total);

  Eigen::VectorXd point(inst.n1 + inst.n2);
  point.setZero();
  for (int j = 0; j < inst.n2; ++j) point[n1 + j] = inst.lower[n1 + j];

  std::vector<long> idx(n1, 0);
  while (true) {
    for (int i = 0; i < n1; ++i)
      point[i] = inst.lower[i] +
                 (inst.upper[i] - inst.lower[i]) *
                     (static_cast<double>(idx[i]) / steps[i]);
    const FixedSideSolve sol = solveWithSideFixed(inst, point, true);
    if (sol.feasible && (!best.feasible || sol.value < best.value)) {
      best.feasible = true;
      best.value = sol.value;
      best.point = sol.point;
    }
    int carry = 0;
    while (carry < n1 && ++idx[carry] > steps[carry]) idx[carry++] = 0;
    if (carry == n1) break;
  }
  return best;
}

}  // namespace bbp
