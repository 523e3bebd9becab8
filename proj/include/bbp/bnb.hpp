#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bbp/instance.hpp"

namespace bbp {

struct BnBConfig {
  std::string relaxation = "hull";  // hull | mccormick
  std::string rule = "alg1";  // alg1 | gap-maxdev | gap-incumbent |
                              // gap-bisect | range-bisect
  double timeLimitSec = 60.0;
  long nodeLimit = 100000;
  double gapTol = 1e-6;
  int K = 8;
  double eps1 = 0.01;
  double eps2 = 1.0 / 16.0;
  double gamma = 2.0 / 3.0;
  int pieceCap = 256;
  unsigned seed = 0;
  bool parallel = false;        // reserved; the driver runs single-threaded
  bool branchY = false;         // branch on y-variables instead of x
  bool heuristicEveryNode = false;
  int heuristicRounds = 3;
};

struct NodeLog {
  long id = 0;
  double bound = 0.0;
  std::string action;  // branch rule, "pruned", "infeasible", ...
  int var = -1;
  double point = 0.0;
  double dual = 0.0;  // global dual bound when the entry was written
};

struct SolveResult {
  bool hasIncumbent = false;
  double primal = 0.0;
  Eigen::VectorXd primalPoint;  // combined (x, y)
  double dual = 0.0;
  double gap = 0.0;  // (primal - dual) / max(|primal|, 1e-9); inf sentinel
  long nodes = 0;
  double wallSeconds = 0.0;
  std::string termination;  // gapTol | timeLimit | nodeLimit | exhausted
  std::vector<NodeLog> log;
};

SolveResult solve(const BBPInstance& inst, const BnBConfig& config);

/// Objective with residual pricing when every row residual fits its channel
/// bounds; nothing when the point is infeasible for the residual form.
std::optional<double> feasibleObjective(const BBPInstance& inst,
                                        const Eigen::VectorXd& point);

/// Alternating LP heuristic: fixes x and solves the exact LP in (y, z), then
/// fixes y and solves in (x, z), objective non-increasing per half-step.
/// start is a combined (x, y) point inside the instance box.
std::optional<std::pair<Eigen::VectorXd, double>> alternatingHeuristic(
    const BBPInstance& inst, const Eigen::VectorXd& start, int maxRounds);

/// dual = min over open-node bounds (incumbent when none remain); gap as in
/// SolveResult, infinity sentinel without an incumbent.
std::pair<double, double> updateGlobalBound(
    const std::vector<double>& openBounds, std::optional<double> incumbent);

struct FixedSideSolve {
  bool feasible = false;
  double value = 0.0;
  Eigen::VectorXd point;  // combined (x, y) with the free side optimized
};

/// Exact LP solve with one side of the bipartition held at `point`'s values
/// (x when fixedIsX). The backbone of the heuristic and the grid oracle.
FixedSideSolve solveWithSideFixed(const BBPInstance& inst,
                                  const Eigen::VectorXd& point, bool fixedIsX);

}  // namespace bbp
