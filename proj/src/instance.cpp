#include "bbp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace bbp {

double BilinearForm::eval(const Eigen::VectorXd& x,
                          const Eigen::VectorXd& y) const {
  double v = constant;
  for (const auto& t : qTerms) v += t.value * x[t.i] * y[t.j];
  for (const auto& [i, c] : aLin) v += c * x[i];
  for (const auto& [j, c] : bLin) v += c * y[j];
  return v;
}

Box Box::unit(int n) {
  return Box{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Ones(n)};
}

double BBPInstance::residualObjective(const Eigen::VectorXd& x,
                                      const Eigen::VectorXd& y) const {
  double v = objective.eval(x, y);
  for (const auto& row : rows) {
    double e = row.form.eval(x, y);
    if (e > 0 && row.zPlus) v += row.zPlus->cost * e;
    if (e < 0 && row.zMinus) v += row.zMinus->cost * (-e);
  }
  return v;
}

void compress(BilinearForm& form) {
  std::map<std::pair<int, int>, double> q;
  for (const auto& t : form.qTerms) q[{t.i, t.j}] += t.value;
  form.qTerms.clear();
  for (const auto& [ij, v] : q)
    if (v != 0.0) form.qTerms.push_back({ij.first, ij.second, v});
  auto mergeLin = [](std::vector<std::pair<int, double>>& lin) {
    std::map<int, double> m;
    for (const auto& [i, v] : lin) m[i] += v;
    lin.clear();
    for (const auto& [i, v] : m)
      if (v != 0.0) lin.emplace_back(i, v);
  };
  mergeLin(form.aLin);
  mergeLin(form.bLin);
}

namespace {

void checkForm(const BilinearForm& f, int n1, int n2, const std::string& where,
               std::vector<std::string>& out) {
  std::set<std::pair<int, int>> seen;
  for (const auto& t : f.qTerms) {
    if (t.i < 0 || t.i >= n1 || t.j < 0 || t.j >= n2) {
      std::ostringstream os;
      os << where << ": q-term index (" << t.i << "," << t.j
         << ") out of range";
      out.push_back(os.str());
    } else if (!seen.insert({t.i, t.j}).second) {
      std::ostringstream os;
      os << where << ": duplicate q-term (" << t.i << "," << t.j << ")";
      out.push_back(os.str());
    }
    if (t.value == 0.0) out.push_back(where + ": explicit zero q coefficient");
    if (!std::isfinite(t.value)) out.push_back(where + ": non-finite q");
  }
  for (const auto& [i, v] : f.aLin) {
    if (i < 0 || i >= n1) out.push_back(where + ": a index out of range");
    if (v == 0.0) out.push_back(where + ": explicit zero a coefficient");
    if (!std::isfinite(v)) out.push_back(where + ": non-finite a");
  }
  for (const auto& [j, v] : f.bLin) {
    if (j < 0 || j >= n2) out.push_back(where + ": b index out of range");
    if (v == 0.0) out.push_back(where + ": explicit zero b coefficient");
    if (!std::isfinite(v)) out.push_back(where + ": non-finite b");
  }
  if (!std::isfinite(f.constant)) out.push_back(where + ": non-finite constant");
}

}  // namespace

std::vector<std::string> validate(const BBPInstance& inst) {
  std::vector<std::string> out;
  const int n = inst.n1 + inst.n2;
  if (inst.n1 < 0 || inst.n2 < 0) out.push_back("negative variable count");
  if (inst.lower.size() != n || inst.upper.size() != n) {
    out.push_back("bound vectors must have length n1+n2");
    return out;
  }
  for (int v = 0; v < n; ++v) {
    if (!std::isfinite(inst.lower[v]) || !std::isfinite(inst.upper[v])) {
      std::ostringstream os;
      os << "variable " << v << ": non-finite bound";
      out.push_back(os.str());
    } else if (inst.lower[v] > inst.upper[v]) {
      std::ostringstream os;
      os << "variable " << v << ": bound order violated, lower "
         << inst.lower[v] << " > upper " << inst.upper[v];
      out.push_back(os.str());
    }
  }
  checkForm(inst.objective, inst.n1, inst.n2, "objective", out);
  for (size_t k = 0; k < inst.rows.size(); ++k) {
    std::ostringstream os;
    os << "row " << k;
    checkForm(inst.rows[k].form, inst.n1, inst.n2, os.str(), out);
    for (const auto* z : {&inst.rows[k].zPlus, &inst.rows[k].zMinus}) {
      if (*z && (!std::isfinite((*z)->bound) || (*z)->bound < 0))
        out.push_back(os.str() + ": residual bound must be finite and >= 0");
    }
  }
  return out;
}

InteractionGraph buildGraph(const BBPInstance& inst) {
  InteractionGraph g;
  for (const auto& t : inst.objective.qTerms)
    if (t.value != 0.0) g.edges.insert({t.i, t.j});
  g.perRow.resize(inst.rows.size());
  for (size_t k = 0; k < inst.rows.size(); ++k) {
    auto& rg = g.perRow[k];
    std::set<int> xs, ys;
    for (const auto& t : inst.rows[k].form.qTerms) {
      if (t.value == 0.0) continue;  // explicit zeros carry no edge
      g.edges.insert({t.i, t.j});
      rg.bilinearPairs.emplace_back(t.i, t.j);
      xs.insert(t.i);
      ys.insert(t.j);
    }
    for (const auto& [i, v] : inst.rows[k].form.aLin) xs.insert(i);
    for (const auto& [j, v] : inst.rows[k].form.bLin) ys.insert(j);
    rg.xVars.assign(xs.begin(), xs.end());
    rg.yVars.assign(ys.begin(), ys.end());
    for (int i : rg.xVars)
      for (int j : rg.yVars) rg.pairs.emplace_back(i, j);
    std::sort(rg.bilinearPairs.begin(), rg.bilinearPairs.end());
  }
  return g;
}

}  // namespace bbp
