#include "bbp/generator.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "bbp/interval.hpp"

namespace bbp {

BBPInstance generateInstance(const GenShape& shape, double noise,
                             unsigned seed, double bandFraction) {
  if (shape.n1 <= 0 || shape.n2 <= 0 || shape.rows <= 0 || shape.density <= 0)
    throw std::invalid_argument("generateInstance: shape must be positive");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  BBPInstance inst;
  inst.n1 = shape.n1;
  inst.n2 = shape.n2;
  inst.lower = Eigen::VectorXd::Zero(shape.n1 + shape.n2);
  inst.upper = Eigen::VectorXd::Ones(shape.n1 + shape.n2);

  // Hidden feasible point, interior so planted rows have slack on both sides.
  Eigen::VectorXd xs(shape.n1), ys(shape.n2);
  for (int i = 0; i < shape.n1; ++i) xs[i] = 0.2 + 0.6 * unit(rng);
  for (int j = 0; j < shape.n2; ++j) ys[j] = 0.2 + 0.6 * unit(rng);

  auto pickDistinct = [&](int count, int limit) {
    std::vector<int> pool(limit);
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<int> out;
    for (int c = 0; c < count && !pool.empty(); ++c) {
      std::uniform_int_distribution<int> pick(0,
                                              static_cast<int>(pool.size()) - 1);
      int at = pick(rng);
      out.push_back(pool[at]);
      pool.erase(pool.begin() + at);
    }
    std::sort(out.begin(), out.end());
    return out;
  };

  // Per-row term counts: mean = density, minimum 1, so row-sparse instances
  // mix cheap single-pair rows with denser ones.
  std::poisson_distribution<int> extraTerms(std::max(0.0, shape.density - 1.0));
  for (int k = 0; k < shape.rows; ++k) {
    int nTerms = 1 + extraTerms(rng);
    nTerms = std::min(nTerms, shape.n1 * shape.n2);
    // Few x-variables per row, matching the row-sparse instance family.
    const int nx = std::min(shape.n1, nTerms > 2 && unit(rng) < 0.5 ? 2 : 1);
    const int ny = std::min(shape.n2, (nTerms + nx - 1) / nx);
    auto xv = pickDistinct(nx, shape.n1);
    auto yv = pickDistinct(ny, shape.n2);

    BilinearRow row;
    int emitted = 0;
    for (int i : xv)
      for (int j : yv) {
        if (emitted++ >= nTerms) break;
        row.form.qTerms.push_back({i, j, coef(rng)});
      }
    for (int i : xv) row.form.aLin.emplace_back(i, 0.5 * coef(rng));
    for (int j : yv) row.form.bLin.emplace_back(j, 0.5 * coef(rng));
    compress(row.form);

    // Plant feasibility, then noise the constant.
    row.form.constant -= row.form.eval(xs, ys);
    double shift = 0.0;
    if (noise > 0) {
      std::normal_distribution<double> d(
          0.0, std::sqrt(noise * std::max(1e-3, std::abs(row.form.constant))));
      shift = d(rng);
      row.form.constant += shift;
    }

    const Interval r = rangeOver(row.form, inst.box(), inst.n1);
    const double spread = std::max(r.hi - r.lo, 1e-6);
    const double margin = std::abs(shift) * 1.2 + 0.01 * spread;
    row.zPlus = ResidualChannel{
        std::min(std::max(bandFraction * std::max(r.hi, 0.0), margin), r.hi < 0 ? margin : r.hi),
        1.0};
    row.zMinus = ResidualChannel{
        std::min(std::max(bandFraction * std::max(-r.lo, 0.0), margin), r.lo > 0 ? margin : -r.lo),
        1.0};
    inst.rows.push_back(std::move(row));
  }
  return inst;
}

}  // namespace bbp
