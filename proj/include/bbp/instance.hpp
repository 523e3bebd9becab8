#pragma once

#include <Eigen/Dense>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace bbp {

/// Sparse bilinear term q_ij * x_i * y_j. i indexes x-variables, j indexes
/// y-variables (separate index spaces).
struct QTerm {
  int i = 0;
  int j = 0;
  double value = 0.0;
};

/// q^T(x ox y) + a^T x + b^T y + c, stored sparsely without explicit zeros.
struct BilinearForm {
  std::vector<QTerm> qTerms;
  std::vector<std::pair<int, double>> aLin;  // (x index, coefficient)
  std::vector<std::pair<int, double>> bLin;  // (y index, coefficient)
  double constant = 0.0;

  double eval(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
};

/// Nonnegative residual channel attached to an equality row: the row reads
/// form(x, y) = zPlus - zMinus with zPlus in [0, bound], and the objective
/// carries cost * zPlus (resp. zMinus).
struct ResidualChannel {
  double bound = 0.0;
  double cost = 1.0;
};

/// One equality constraint, optionally with residual channels.
struct BilinearRow {
  BilinearForm form;
  std::optional<ResidualChannel> zPlus;
  std::optional<ResidualChannel> zMinus;
};

/// Closed rectangular domain over the n1 + n2 variables (x block first).
struct Box {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  static Box unit(int n);
  double width(int v) const { return hi[v] - lo[v]; }
};

struct BBPInstance {
  int n1 = 0;  // number of x-variables
  int n2 = 0;  // number of y-variables
  BilinearForm objective;
  std::vector<BilinearRow> rows;
  Eigen::VectorXd lower;  // length n1 + n2, x block first
  Eigen::VectorXd upper;

  int numVars() const { return n1 + n2; }
  Box box() const { return Box{lower, upper}; }
  /// Objective value at (x, y) with row residuals priced at their costs.
  double residualObjective(const Eigen::VectorXd& x,
                           const Eigen::VectorXd& y) const;
};

/// Bipartite interaction structure of an instance.
struct InteractionGraph {
  std::set<std::pair<int, int>> edges;  // pairs with nonzero q anywhere
  struct RowGraph {
    std::vector<int> xVars;                        // V1^k, sorted
    std::vector<int> yVars;                        // V2^k, sorted
    std::vector<std::pair<int, int>> pairs;        // V1^k x V2^k
    std::vector<std::pair<int, int>> bilinearPairs;  // nonzero q in this row
  };
  std::vector<RowGraph> perRow;
};

std::vector<std::string> validate(const BBPInstance& inst);

InteractionGraph buildGraph(const BBPInstance& inst);

/// Drops explicit zeros and merges duplicate indices in place.
void compress(BilinearForm& form);

}  // namespace bbp
