#include "bbp/lp.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace bbp {

int LPProblem::addVar(double lo, double hi, double cost) {
  const int idx = numVars++;
  lower.conservativeResize(numVars);
  upper.conservativeResize(numVars);
  objective.conservativeResize(numVars);
  lower[idx] = lo;
  upper[idx] = hi;
  objective[idx] = cost;
  return idx;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class State : unsigned char { Lower, Upper, Basic };

// Revised simplex with a sparse LU basis factorization and product-form
// eta updates between refactorizations.
class Simplex {
 public:
  Simplex(const LPProblem& p, const LPTolerances& tol) : p_(p), tol_(tol) {}

  LPResult run();

 private:
  struct Eta {
    int r;
    double piv;
    Eigen::VectorXd alpha;  // entering column in basis coordinates
  };

  const LPProblem& p_;
  LPTolerances tol_;

  int n_ = 0;   // structural
  int m_ = 0;   // rows
  int total_ = 0;

  std::vector<std::vector<std::pair<int, double>>> cols_;
  Eigen::VectorXd lo_, hi_, costPhase2_, cost_;
  Eigen::VectorXd b_;
  std::vector<int> basic_;       // size m_: column in basis position r
  std::vector<int> basisPos_;    // column -> basis position or -1
  std::vector<State> state_;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
  std::vector<Eta> etas_;
  Eigen::VectorXd xb_;           // values of basic columns
  Eigen::VectorXd xn_;           // values of all columns (nonbasic authoritative)
  int iterations_ = 0;
  bool bland_ = false;
  int degenerateRun_ = 0;
  std::chrono::steady_clock::time_point start_;
  bool outOfTime_ = false;
  bool singular_ = false;  // basis factorization failed; abort the solve

  void build();
  void refactorize();
  double colValue(int j) const {
    return basisPos_[j] >= 0 ? xb_[basisPos_[j]] : xn_[j];
  }
  Eigen::VectorXd ftranSolve(const Eigen::VectorXd& v) {
    Eigen::VectorXd x = lu_.solve(v);
    for (const Eta& e : etas_) {
      const double t = x[e.r] / e.piv;
      if (t != 0.0) x -= t * e.alpha;
      x[e.r] = t;
    }
    return x;
  }
  Eigen::VectorXd btranSolve(const Eigen::VectorXd& v) {
    Eigen::VectorXd y = v;
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      const double d = it->alpha.dot(y) - it->piv * y[it->r];
      y[it->r] = (y[it->r] - d) / it->piv;
    }
    return lu_.transpose().solve(y);
  }
  Eigen::VectorXd ftran(int j) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(m_);
    for (const auto& [r, v] : cols_[j]) a[r] = v;
    return ftranSolve(a);
  }
  // Returns true when an optimal basis for the current cost was reached,
  // false on the unbounded guard.
  bool iterate(int maxIter);
  double objectiveValue(const Eigen::VectorXd& c) const;
  bool certify(double feasTol) const;
};

void Simplex::build() {
  singular_ = false;  // the crash basis below is triangular, hence regular
  n_ = p_.numVars;
  m_ = static_cast<int>(p_.rows.size());
  total_ = n_ + 2 * m_;
  cols_.assign(total_, {});
  lo_.resize(total_);
  hi_.resize(total_);
  costPhase2_ = Eigen::VectorXd::Zero(total_);
  b_.resize(m_);
  for (int j = 0; j < n_; ++j) {
    lo_[j] = p_.lower[j];
    hi_[j] = p_.upper[j];
    costPhase2_[j] = p_.objective[j];
  }
  for (int r = 0; r < m_; ++r) {
    const auto& row = p_.rows[r];
    b_[r] = row.rhs;
    for (const auto& [j, v] : row.coeffs) cols_[j].emplace_back(r, v);
    const int s = n_ + r;
    cols_[s] = {{r, 1.0}};
    switch (row.sense) {
      case '<': lo_[s] = 0.0;   hi_[s] = kInf; break;
      case '>': lo_[s] = -kInf; hi_[s] = 0.0;  break;
      default:  lo_[s] = 0.0;   hi_[s] = 0.0;  break;
    }
  }
  // Crash basis: slack where it absorbs the residual, artificial otherwise.
  state_.assign(total_, State::Lower);
  xn_ = Eigen::VectorXd::Zero(total_);
  basic_.assign(m_, -1);
  basisPos_.assign(total_, -1);
  for (int j = 0; j < n_; ++j) xn_[j] = lo_[j];
  Eigen::VectorXd resid = b_;
  for (int j = 0; j < n_; ++j)
    if (xn_[j] != 0.0)
      for (const auto& [r, v] : cols_[j]) resid[r] -= v * xn_[j];
  for (int r = 0; r < m_; ++r) {
    const int s = n_ + r;
    const int a = n_ + m_ + r;
    if (resid[r] >= lo_[s] - tol_.feasibility &&
        resid[r] <= hi_[s] + tol_.feasibility) {
      basic_[r] = s;
      basisPos_[s] = r;
      state_[s] = State::Basic;
      cols_[a] = {{r, 1.0}};
      lo_[a] = hi_[a] = 0.0;  // artificial unused
    } else {
      cols_[a] = {{r, resid[r] >= 0 ? 1.0 : -1.0}};
      lo_[a] = 0.0;
      hi_[a] = kInf;
      basic_[r] = a;
      basisPos_[a] = r;
      state_[a] = State::Basic;
      // Park the slack at the bound nearest the residual.
      if (std::isfinite(lo_[s]) && resid[r] < lo_[s]) {
        state_[s] = State::Lower;
        xn_[s] = lo_[s];
      } else if (std::isfinite(hi_[s])) {
        state_[s] = State::Upper;
        xn_[s] = hi_[s];
      } else {
        state_[s] = State::Lower;
        xn_[s] = lo_[s];
      }
    }
  }
  refactorize();
}

void Simplex::refactorize() {
  std::vector<Eigen::Triplet<double>> trips;
  for (int r = 0; r < m_; ++r)
    for (const auto& [i, v] : cols_[basic_[r]]) trips.emplace_back(i, r, v);
  Eigen::SparseMatrix<double> B(m_, m_);
  B.setFromTriplets(trips.begin(), trips.end());
  etas_.clear();
  lu_.compute(B);
  if (lu_.info() != Eigen::Success) {
    // Singular basis: solving against it walks corrupt permutation data.
    singular_ = true;
    xb_ = Eigen::VectorXd::Zero(m_);  // keep downstream reads well-defined
    return;
  }
  Eigen::VectorXd rhs = b_;
  for (int j = 0; j < total_; ++j)
    if (basisPos_[j] < 0 && xn_[j] != 0.0)
      for (const auto& [r, v] : cols_[j]) rhs[r] -= v * xn_[j];
  xb_ = ftranSolve(rhs);
}

double Simplex::objectiveValue(const Eigen::VectorXd& c) const {
  double obj = 0.0;
  for (int j = 0; j < total_; ++j)
    if (c[j] != 0.0) obj += c[j] * colValue(j);
  return obj;
}

bool Simplex::certify(double feasTol) const {
  for (int j = 0; j < total_; ++j) {
    const double v = colValue(j);
    if (v < lo_[j] - feasTol || v > hi_[j] + feasTol) return false;
  }
  Eigen::VectorXd ax = Eigen::VectorXd::Zero(m_);
  for (int j = 0; j < total_; ++j) {
    const double v = colValue(j);
    if (v != 0.0)
      for (const auto& [r, c] : cols_[j]) ax[r] += c * v;
  }
  for (int r = 0; r < m_; ++r) {
    const double scale = 1.0 + std::abs(b_[r]);
    if (std::abs(ax[r] - b_[r]) > feasTol * scale * 10) return false;
  }
  return true;
}

bool Simplex::iterate(int maxIter) {
  const int refactorEvery = 64;
  for (; iterations_ < maxIter; ++iterations_) {
    if (singular_) return true;  // caller reports Stalled
    if ((iterations_ & 127) == 0 &&
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      start_)
                .count() > tol_.timeLimitSec) {
      outOfTime_ = true;
      return true;  // caller fails certification and reports Stalled
    }
    // BTRAN
    Eigen::VectorXd cb(m_);
    for (int r = 0; r < m_; ++r) cb[r] = cost_[basic_[r]];
    Eigen::VectorXd y = btranSolve(cb);

    // Pricing
    int entering = -1;
    int dir = 0;
    double best = tol_.optimality;
    for (int j = 0; j < total_; ++j) {
      if (basisPos_[j] >= 0) continue;
      if (hi_[j] - lo_[j] <= 0.0) continue;  // fixed column
      double d = cost_[j];
      for (const auto& [r, v] : cols_[j]) d -= y[r] * v;
      double viol = 0.0;
      int cand = 0;
      if (state_[j] == State::Lower && d < -tol_.optimality) {
        viol = -d;
        cand = +1;
      } else if (state_[j] == State::Upper && d > tol_.optimality) {
        viol = d;
        cand = -1;
      }
      if (cand == 0) continue;
      if (bland_) { entering = j; dir = cand; break; }
      if (viol > best) { best = viol; entering = j; dir = cand; }
    }
    if (entering < 0) return true;  // optimal for current cost

    Eigen::VectorXd alpha = ftran(entering);

    // Ratio test
    double tmax = hi_[entering] - lo_[entering];  // bound flip distance
    int leaving = -1;       // basis position
    double leavePivot = 0.0;
    for (int r = 0; r < m_; ++r) {
      const double delta = dir * alpha[r];
      const int jb = basic_[r];
      double t = kInf;
      if (delta > tol_.pivot) {
        if (std::isfinite(lo_[jb])) t = (xb_[r] - lo_[jb]) / delta;
      } else if (delta < -tol_.pivot) {
        if (std::isfinite(hi_[jb])) t = (xb_[r] - hi_[jb]) / delta;
      }
      if (t < -1e-12) t = 0.0;
      const bool better =
          t < tmax - 1e-12 ||
          (t < tmax + 1e-12 && leaving >= 0 &&
           (bland_ ? basic_[r] < basic_[leaving]
                   : std::abs(delta) > std::abs(leavePivot)));
      if (better) {
        tmax = std::max(t, 0.0);
        leaving = r;
        leavePivot = delta;
      }
    }
    if (!std::isfinite(tmax)) return false;  // unbounded guard

    degenerateRun_ = (tmax < 1e-11) ? degenerateRun_ + 1 : 0;
    if (!bland_ && degenerateRun_ > m_ + 100) {
      bland_ = true;        // anti-cycling
      refactorize();        // and a clean factorization while we are at it
    }

    const double enterFrom =
        state_[entering] == State::Lower ? lo_[entering] : hi_[entering];
    if (leaving < 0) {
      // Bound flip
      xn_[entering] = enterFrom + dir * tmax;
      state_[entering] =
          state_[entering] == State::Lower ? State::Upper : State::Lower;
      for (int r = 0; r < m_; ++r) xb_[r] -= tmax * dir * alpha[r];
      continue;
    }

    // Pivot
    const int jOut = basic_[leaving];
    for (int r = 0; r < m_; ++r) xb_[r] -= tmax * dir * alpha[r];
    const double outVal = leavePivot > 0 ? lo_[jOut] : hi_[jOut];
    state_[jOut] = leavePivot > 0 ? State::Lower : State::Upper;
    xn_[jOut] = outVal;
    basisPos_[jOut] = -1;
    basic_[leaving] = entering;
    basisPos_[entering] = leaving;
    state_[entering] = State::Basic;
    xb_[leaving] = enterFrom + dir * tmax;

    etas_.push_back(Eta{leaving, alpha[leaving], std::move(alpha)});
    // A tiny pivot makes the eta numerically useless and risks a (near-)
    // singular basis: refactorize at once so lu_.info() can flag it.
    if (std::abs(etas_.back().piv) < 1e-8 ||
        static_cast<int>(etas_.size()) >= refactorEvery)
      refactorize();
  }
  return true;  // iteration cap; caller checks certification
}

LPResult Simplex::run() {
  start_ = std::chrono::steady_clock::now();
  build();
  const int maxIter = 50 * (m_ + n_) + 2000;

  // Phase 1: minimize artificial mass.
  cost_ = Eigen::VectorXd::Zero(total_);
  for (int r = 0; r < m_; ++r)
    if (hi_[n_ + m_ + r] > 0) cost_[n_ + m_ + r] = 1.0;
  bool needPhase1 = (cost_.array() != 0.0).any();
  LPResult res;
  if (needPhase1) {
    iterate(maxIter);
    refactorize();
    if (outOfTime_ || singular_) {
      res.status = LPStatus::Stalled;
      res.iterations = iterations_;
      return res;
    }
    const double infeasMass = objectiveValue(cost_);
    if (infeasMass > std::sqrt(static_cast<double>(std::max(m_, 1))) *
                         tol_.feasibility * 100) {
      res.status = LPStatus::Infeasible;
      res.iterations = iterations_;
      return res;
    }
    for (int r = 0; r < m_; ++r) hi_[n_ + m_ + r] = 0.0;  // pin artificials
  }

  // Phase 2
  cost_ = costPhase2_;
  bool bounded = iterate(maxIter);
  refactorize();
  if (!bounded) {
    res.status = LPStatus::UnboundedGuard;
    res.iterations = iterations_;
    return res;
  }
  if (outOfTime_) {
    res.status = LPStatus::Stalled;
    res.iterations = iterations_;
    return res;
  }
  if (singular_ || !certify(tol_.feasibility) || iterations_ >= maxIter) {
    // One clean restart with Bland engaged from the start.
    if (!bland_) {
      bland_ = true;
      degenerateRun_ = 0;
      build();
      cost_ = Eigen::VectorXd::Zero(total_);
      for (int r = 0; r < m_; ++r)
        if (hi_[n_ + m_ + r] > 0) cost_[n_ + m_ + r] = 1.0;
      if ((cost_.array() != 0.0).any()) {
        iterate(2 * maxIter);
        refactorize();
        if (outOfTime_ || singular_) {
          res.status = LPStatus::Stalled;
          res.iterations = iterations_;
          return res;
        }
        if (objectiveValue(cost_) > 1e-5) {
          res.status = LPStatus::Infeasible;
          res.iterations = iterations_;
          return res;
        }
        for (int r = 0; r < m_; ++r) hi_[n_ + m_ + r] = 0.0;
      }
      cost_ = costPhase2_;
      iterate(2 * maxIter);
      refactorize();
    }
    if (outOfTime_ || singular_) {
      res.status = LPStatus::Stalled;
      res.iterations = iterations_;
      return res;
    }
    if (!certify(tol_.feasibility * 100)) {
      res.status = LPStatus::Stalled;
      res.iterations = iterations_;
      return res;
    }
  }

  res.status = LPStatus::Optimal;
  res.primal.resize(n_);
  for (int j = 0; j < n_; ++j)
    res.primal[j] = std::clamp(colValue(j), p_.lower[j], p_.upper[j]);
  res.objective = p_.objective.size() ? p_.objective.dot(res.primal) : 0.0;
  res.iterations = iterations_;
  return res;
}

}  // namespace

LPResult solveLP(const LPProblem& p, const LPTolerances& tol) {
  Simplex s(p, tol);
  if (std::getenv("BBP_LP_LOG")) {
    const auto t0 = std::chrono::steady_clock::now();
    LPResult r = s.run();
    const double sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::fprintf(stderr, "[lp] n=%d m=%zu iters=%d status=%d %.3fs\n",
                 p.numVars, p.rows.size(), r.iterations,
                 static_cast<int>(r.status), sec);
    return r;
  }
  return s.run();
}

}  // namespace bbp
