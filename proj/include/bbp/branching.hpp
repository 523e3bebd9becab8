#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bbp/fixings.hpp"
#include "bbp/instance.hpp"

namespace bbp {

/// One branching disjunction harvested from a hull piece: an x-variable, an
/// interval of its current domain where the piece's curve forces a two-sided
/// choice, and the area of the curve's polyhedral outer approximation.
struct DisjunctionStat {
  int var = -1;       // x index
  double lo = 0.0;    // interval in original coordinates
  double hi = 0.0;
  double area = 0.0;  // shoelace area of the outer-approximation polygon
};

struct BranchDecision {
  int var = -1;       // x index (combined index when branching on y)
  double point = 0.0;
  std::string rule;   // alg1 | bisection | maxDeviation | incumbent
};

/// Geometry of a pair piece translated into a branching interval for its
/// x-variable, in original coordinates. Returns nothing for singleton pieces
/// or when the piece's curve misses the box.
std::optional<DisjunctionStat> analyzeDisjunction(const HullPiece& piece,
                                                  const Box& nodeBox, int n1,
                                                  double gamma = 2.0 / 3.0);

/// Volume-guided selection: accumulates areas over K cells per x-variable,
/// drops variables with relative disjunction count below eps1, branches at
/// the argmax cell's midpoint when its mass reaches eps2, and falls back to
/// bisection of the widest x-domain otherwise. Ties break to the lowest
/// variable then the lowest cell.
BranchDecision algorithm1(const std::vector<DisjunctionStat>& stats,
                          const Box& nodeBox, int n1, int K = 8,
                          double eps1 = 0.01, double eps2 = 1.0 / 16.0);

/// Variable of the product edge maximizing |w - x*y| at the relaxation
/// point; the x side is returned unless branchY is set. Falls back to the
/// widest domain on the chosen side when every product is exact.
int gapErrorSelect(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                   const std::vector<std::pair<std::pair<int, int>, double>>&
                       wValues,
                   const Box& nodeBox, int n1, bool branchY = false);

/// Branch-point rules: "bisect" -> midpoint; "maxdev" -> relaxation value
/// clamped 1e-6*width inside; "incumbent" -> incumbent value when strictly
/// interior, else maxdev. var is a combined index.
double branchPoint(const std::string& rule, int var, const Box& nodeBox,
                   double relaxValue, std::optional<double> incumbentValue);

}  // namespace bbp
