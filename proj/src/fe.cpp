#include "bbp/fe.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

#include "bbp/interval.hpp"

namespace bbp {

std::vector<std::string> validateFE(const FEInput& fe) {
  std::vector<std::string> out;
  const int m = fe.dofCount;
  auto checkMat = [&](const Eigen::MatrixXd& M, const std::string& name) {
    if (M.rows() != m || M.cols() != m) {
      out.push_back(name + ": dimension mismatch");
      return;
    }
    if (!M.isApprox(M.transpose(), 1e-9)) out.push_back(name + ": not symmetric");
  };
  checkMat(fe.mass, "M");
  checkMat(fe.stiffness0, "K0");
  for (size_t i = 0; i < fe.stiffnessUpdates.size(); ++i) {
    std::ostringstream os;
    os << "K" << i + 1;
    checkMat(fe.stiffnessUpdates[i], os.str());
  }
  for (size_t l = 0; l < fe.modes.size(); ++l) {
    const auto& mode = fe.modes[l];
    std::ostringstream os;
    os << "mode " << l;
    if (mode.lambda <= 0) out.push_back(os.str() + ": lambda must be > 0");
    if (static_cast<int>(mode.instrumented.size()) != m)
      out.push_back(os.str() + ": mask length != m");
    long measured = std::count(mode.instrumented.begin(),
                               mode.instrumented.end(), true);
    if (mode.measuredShape.size() != measured)
      out.push_back(os.str() + ": shape length != instrumented count");
  }
  return out;
}

NormalizedInstance fromFE(const FEInput& fe, double noiseFraction,
                          unsigned seed) {
  auto diags = validateFE(fe);
  if (!diags.empty()) throw std::runtime_error("FE input invalid: " + diags[0]);

  const int m = fe.dofCount;
  const int n1 = static_cast<int>(fe.stiffnessUpdates.size());

  std::mt19937_64 rng(seed);
  auto perturb = [&](double v) {
    if (noiseFraction <= 0) return v;
    std::normal_distribution<double> d(0.0,
                                       std::sqrt(noiseFraction * std::abs(v)));
    return v + d(rng);
  };

  BBPInstance inst;
  inst.n1 = n1;

  // Lay out one y-variable per unmeasured DOF per mode.
  std::vector<std::vector<int>> yIndex(fe.modes.size(),
                                       std::vector<int>(m, -1));
  int n2 = 0;
  for (size_t l = 0; l < fe.modes.size(); ++l)
    for (int d = 0; d < m; ++d)
      if (!fe.modes[l].instrumented[d]) yIndex[l][d] = n2++;
  inst.n2 = n2;
  inst.lower.resize(n1 + n2);
  inst.upper.resize(n1 + n2);
  inst.lower.head(n1).setConstant(-1.0);
  inst.upper.head(n1).setConstant(1.0);
  inst.lower.tail(n2).setConstant(-2.0);
  inst.upper.tail(n2).setConstant(2.0);

  for (size_t l = 0; l < fe.modes.size(); ++l) {
    const auto& mode = fe.modes[l];
    const double lambda = perturb(mode.lambda);
    std::vector<double> shape(m, 0.0);
    int mi = 0;
    for (int d = 0; d < m; ++d)
      if (mode.instrumented[d]) shape[d] = perturb(mode.measuredShape[mi++]);

    const Eigen::MatrixXd base = fe.stiffness0 - lambda * fe.mass;
    for (int d = 0; d < m; ++d) {
      BilinearRow row;
      for (int c = 0; c < m; ++c) {
        if (mode.instrumented[c]) {
          row.form.constant += base(d, c) * shape[c];
          for (int i = 0; i < n1; ++i) {
            const double v = fe.stiffnessUpdates[i](d, c) * shape[c];
            if (v != 0.0) row.form.aLin.emplace_back(i, v);
          }
        } else {
          const int j = yIndex[l][c];
          if (base(d, c) != 0.0) row.form.bLin.emplace_back(j, base(d, c));
          for (int i = 0; i < n1; ++i) {
            const double v = fe.stiffnessUpdates[i](d, c);
            if (v != 0.0) row.form.qTerms.push_back({i, j, v});
          }
        }
      }
      compress(row.form);
      const Interval r = rangeOver(row.form, inst.box(), n1);
      row.zPlus = ResidualChannel{std::max(0.0, r.hi), 1.0};
      row.zMinus = ResidualChannel{std::max(0.0, -r.lo), 1.0};
      inst.rows.push_back(std::move(row));
    }
  }
  return normalizeBox(inst);
}

}  // namespace bbp
