#pragma once

#include <map>
#include <utility>
#include <vector>

#include "bbp/fixings.hpp"
#include "bbp/instance.hpp"
#include "bbp/lp.hpp"

namespace bbp {

struct RelaxConfig {
  bool hull = true;   // add per-row disjunctive hull blocks
  int pieceCap = 256;
};

/// Per-row hull block bookkeeping, kept so branching can reuse the pieces.
struct RowBlock {
  int row = -1;
  bool fallback = false;
  std::vector<HullPiece> pieces;
};

/// The node LP: columns for x, y, w (one per interacting pair), residual
/// channels z, and hull-block piece variables; rows for the equalities,
/// McCormick envelopes and disjunctive blocks.
struct NodeRelaxation {
  LPProblem lp;
  double objOffset = 0.0;
  int n1 = 0, n2 = 0;
  std::vector<int> xCols, yCols;
  std::map<std::pair<int, int>, int> wCols;
  std::vector<int> zPlusCols, zMinusCols;  // -1 when the channel is absent
  std::vector<RowBlock> blocks;
  Box nodeBox{Eigen::VectorXd(), Eigen::VectorXd()};
  bool infeasible = false;
};

/// The four envelope inequalities of w = x*y over [xl,xu] x [yl,yu], exact
/// hull of the product graph over the box.
std::vector<LPRow> mcCormickCuts(int xCol, int yCol, int wCol, double xl,
                                 double xu, double yl, double yu);

/// Sound residual-channel bounds on the node box: interval range of the row
/// split by sign, clipped by the declared channel bounds. Returns
/// (uPlus, uMinus).
std::pair<double, double> tightenZBounds(const BilinearRow& row,
                                         const Box& nodeBox, int n1);

/// Assembles the node LP. Its value (lp objective + objOffset) is a valid
/// lower bound on the instance over nodeBox; infeasible is set when a row's
/// piece enumeration certifies emptiness.
NodeRelaxation buildNodeRelaxation(const BBPInstance& inst,
                                   const InteractionGraph& graph,
                                   const Box& nodeBox,
                                   const RelaxConfig& config);

}  // namespace bbp
