#include "bbp/scaling.hpp"

#include <cmath>
#include <stdexcept>

#include "bbp/interval.hpp"

namespace bbp {

bool ScalingRecord::isIdentity() const {
  if (origN1 != newN1 || origN2 != newN2) return false;
  for (int v = 0; v < origN1 + origN2; ++v)
    if (alpha[v] != 1.0 || beta[v] != 0.0) return false;
  return true;
}

Eigen::VectorXd ScalingRecord::unnormalizePoint(
    const Eigen::VectorXd& unitPoint) const {
  Eigen::VectorXd out(origN1 + origN2);
  for (int v = 0; v < origN1 + origN2; ++v) {
    if (keptIndex[v] >= 0)
      out[v] = alpha[v] * unitPoint[keptIndex[v]] + beta[v];
    else
      out[v] = beta[v];
  }
  return out;
}

namespace {

// Substitutes v = alpha*v' + beta into a form, with eliminated variables
// contributing only their beta.
BilinearForm substitute(const BilinearForm& f, const ScalingRecord& rec) {
  BilinearForm out;
  const int n1 = rec.origN1;
  auto keptX = [&](int i) { return rec.keptIndex[i]; };
  auto keptY = [&](int j) { return rec.keptIndex[n1 + j] < 0
                                ? -1
                                : rec.keptIndex[n1 + j] - rec.newN1; };
  for (const auto& t : f.qTerms) {
    const double ax = rec.alpha[t.i], bx = rec.beta[t.i];
    const double ay = rec.alpha[n1 + t.j], by = rec.beta[n1 + t.j];
    const int ki = keptX(t.i), kj = keptY(t.j);
    if (ki >= 0 && kj >= 0) out.qTerms.push_back({ki, kj, t.value * ax * ay});
    if (ki >= 0) out.aLin.emplace_back(ki, t.value * ax * by);
    if (kj >= 0) out.bLin.emplace_back(kj, t.value * ay * bx);
    out.constant += t.value * bx * by;
  }
  for (const auto& [i, c] : f.aLin) {
    const int ki = keptX(i);
    if (ki >= 0) out.aLin.emplace_back(ki, c * rec.alpha[i]);
    out.constant += c * rec.beta[i];
  }
  for (const auto& [j, c] : f.bLin) {
    const int kj = keptY(j);
    if (kj >= 0) out.bLin.emplace_back(kj, c * rec.alpha[n1 + j]);
    out.constant += c * rec.beta[n1 + j];
  }
  out.constant += f.constant;
  compress(out);
  return out;
}

}  // namespace

NormalizedInstance normalizeBox(const BBPInstance& inst) {
  const int n = inst.n1 + inst.n2;
  ScalingRecord rec;
  rec.origN1 = inst.n1;
  rec.origN2 = inst.n2;
  rec.alpha.resize(n);
  rec.beta.resize(n);
  rec.keptIndex.assign(n, -1);
  int nx = 0, ny = 0;
  for (int v = 0; v < n; ++v) {
    rec.alpha[v] = inst.upper[v] - inst.lower[v];
    rec.beta[v] = inst.lower[v];
    if (rec.alpha[v] > 0) (v < inst.n1 ? nx : ny)++;
  }
  rec.newN1 = nx;
  rec.newN2 = ny;
  int next = 0;
  for (int v = 0; v < inst.n1; ++v)
    if (rec.alpha[v] > 0) rec.keptIndex[v] = next++;
  for (int v = inst.n1; v < n; ++v)
    if (rec.alpha[v] > 0) rec.keptIndex[v] = next++;

  BBPInstance out;
  out.n1 = nx;
  out.n2 = ny;
  out.lower = Eigen::VectorXd::Zero(nx + ny);
  out.upper = Eigen::VectorXd::Ones(nx + ny);
  out.objective = substitute(inst.objective, rec);
  out.rows.reserve(inst.rows.size());
  for (const auto& row : inst.rows) {
    BilinearRow r;
    r.form = substitute(row.form, rec);
    r.zPlus = row.zPlus;
    r.zMinus = row.zMinus;
    out.rows.push_back(std::move(r));
  }
  return {std::move(out), std::move(rec)};
}

SlackConversion inequalityToEquality(const BilinearForm& form, char sense,
                                     const Box& box, int n1) {
  SlackConversion out;
  out.equality = form;
  if (sense == '=') return out;
  if (sense != '<' && sense != '>')
    throw std::runtime_error("unknown row sense");
  const Interval r = rangeOver(form, box, n1);
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi))
    throw std::runtime_error("interval arithmetic overflow on inequality row");
  out.slackNeeded = true;
  if (sense == '<') {
    // form <= 0  ->  form + s = 0, s = -form
    out.slackSign = +1;
    out.slackLo = std::max(0.0, -r.hi);
    out.slackHi = std::max(0.0, -r.lo);
  } else {
    // form >= 0  ->  form - s = 0, s = form
    out.slackSign = -1;
    out.slackLo = std::max(0.0, r.lo);
    out.slackHi = std::max(0.0, r.hi);
  }
  return out;
}

}  // namespace bbp
