#pragma once

#include <Eigen/Dense>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace bbp {

struct LPTolerances {
  double feasibility = 1e-7;
  double optimality = 1e-9;
  double pivot = 1e-10;
  // Hard wall-clock budget per solve; a pathological (cycling or heavily
  // degenerate) instance returns Stalled instead of monopolizing the search.
  double timeLimitSec = 10.0;
};

enum class LPStatus { Optimal, Infeasible, UnboundedGuard, Stalled };

struct LPRow {
  std::vector<std::pair<int, double>> coeffs;  // sparse (column, value)
  char sense = '=';                            // '=', '<' or '>'
  double rhs = 0.0;
};

/// min c^T v  s.t.  rows,  lower <= v <= upper (finite bounds).
struct LPProblem {
  int numVars = 0;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  Eigen::VectorXd objective;
  std::vector<LPRow> rows;

  int addVar(double lo, double hi, double cost);
  void addRow(LPRow row) { rows.push_back(std::move(row)); }
};

struct LPResult {
  LPStatus status = LPStatus::Stalled;
  Eigen::VectorXd primal;
  double objective = 0.0;
  int iterations = 0;
};

/// Bounded-variable primal simplex (dense revised form, two phases).
/// Deterministic for identical input.
LPResult solveLP(const LPProblem& p, const LPTolerances& tol = {});

}  // namespace bbp
