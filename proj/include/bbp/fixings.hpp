#pragma once

#include <utility>
#include <vector>

#include "bbp/cuts.hpp"
#include "bbp/instance.hpp"

namespace bbp {

/// One disjunct of a row's convex-hull block, in node-box coordinates
/// rescaled to the unit box. Pair pieces leave one bilinear pair (xVar, yVar)
/// free and carry the certified cut set of the induced two-variable band set.
/// Singleton pieces leave one variable free on an interval. All other live
/// row variables are fixed at unit-box endpoints (fixedAt, combined index:
/// x_i -> i, y_j -> n1 + j).
struct HullPiece {
  bool isPair = false;
  int xVar = -1;
  int yVar = -1;
  bool freeIsX = true;                          // singleton side
  int freeVar = -1;                             // combined index (singleton)
  double freeLo = 0.0, freeHi = 1.0;            // unit coords (singleton)
  std::vector<std::pair<int, double>> fixedAt;  // combined index -> 0/1
  BandSet set;                                  // pair pieces
  CutSet cuts;                                  // pair pieces
};

struct FixingResult {
  std::vector<HullPiece> pieces;
  bool fallback = false;    // piece count exceeded the cap
  bool infeasible = false;  // every piece empty: row infeasible on this box
};

/// Row data rescaled to the unit box over the node's live (non-degenerate)
/// variables; degenerate variables are folded into the constants.
struct RescaledRow {
  std::vector<int> liveX, liveY;                  // instance indices
  std::vector<QTerm> qTerms;                      // unit-coord coefficients
  std::vector<std::pair<int, double>> aLin, bLin;
  double constant = 0.0;
};

RescaledRow rescaleRow(const BilinearForm& form, const Box& nodeBox, int n1);

/// Enumerates the Theorem-1 disjuncts of one row over the node box:
/// U ranges over the row's live bilinear pairs plus the live variables not
/// touched by any live pair; all remaining live row variables take unit-box
/// endpoint values. [bandLo, bandHi] is the admissible residual range of the
/// row (0, 0 for plain equalities).
FixingResult enumerateFixings(const BilinearForm& form, const Box& nodeBox,
                              int n1, double bandLo, double bandHi,
                              int cap = 256);

}  // namespace bbp
