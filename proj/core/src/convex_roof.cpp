#include "pcoh/convex_roof.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "pcoh/errors.hpp"
#include "pcoh/random.hpp"

namespace pcoh {

int RoofConfig::resolved_ensemble_size(int rank) const {
  if (ensemble_size > 0) return std::max(ensemble_size, rank);
  return std::max(rank, std::min(rank * rank, 16));
}

namespace {

// A restart stops once `stall_window` sweeps improve the objective by less than this.
constexpr double kStallImprovement = 1e-10;

struct RestartOutcome {
  double value = 0.0;
  CMatrix rows;  // m x D, unnormalized ensemble members
  bool converged = false;
  long evaluations = 0;
};

class RoofSearch {
 public:
  RoofSearch(int da, int db, const PureValuation& valuation) : da_(da), db_(db), valuation_(valuation) {}

  double term(const CMatrix& rows, Eigen::Index i, long& evals) const {
    const double w = rows.row(i).squaredNorm();
    if (w <= 1e-300) return 0.0;
    ++evals;
    CVector v = rows.row(i).transpose() / std::sqrt(w);
    return w * valuation_(PureState(da_, db_, std::move(v)));
  }

  RestartOutcome run(CMatrix rows, const RoofConfig& cfg, const Tolerance& tol, Rng& rng) const {
    RestartOutcome out;
    const Eigen::Index m = rows.rows();
    std::vector<double> terms(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i) terms[static_cast<std::size_t>(i)] = term(rows, i, out.evaluations);
    double total = 0.0;
    for (double t : terms) total += t;

    // One iteration is a sweep over every row pair.
    const int iters = cfg.max_iters;
    const int tail_start = iters - std::max(1, iters / 10);
    double value_at_tail = total;
    bool stalled = false;
    if (m >= 2) {
      const double ratio = cfg.final_step / cfg.initial_step;
      std::vector<double> history;
      history.reserve(static_cast<std::size_t>(iters));
      CMatrix pair(2, rows.cols());
      for (int it = 0; it < iters; ++it) {
        if (it == tail_start) value_at_tail = total;
        const double frac = iters > 1 ? static_cast<double>(it) / (iters - 1) : 0.0;
        const double step = cfg.initial_step * std::pow(ratio, frac);
        for (Eigen::Index i = 0; i + 1 < m; ++i) {
          for (Eigen::Index j = i + 1; j < m; ++j) {
            const double theta = rng.uniform(-step, step);
            const cplx e = std::polar(1.0, rng.uniform(0.0, 2.0 * M_PI));
            const double c = std::cos(theta);
            const double s = std::sin(theta);
            pair.row(0) = c * rows.row(i) - e * s * rows.row(j);
            pair.row(1) = std::conj(e) * s * rows.row(i) + c * rows.row(j);
            const double ti = term(pair, 0, out.evaluations);
            const double tj = term(pair, 1, out.evaluations);
            auto& old_i = terms[static_cast<std::size_t>(i)];
            auto& old_j = terms[static_cast<std::size_t>(j)];
            if (ti + tj < old_i + old_j) {
              total += ti + tj - old_i - old_j;
              rows.row(i) = pair.row(0);
              rows.row(j) = pair.row(1);
              old_i = ti;
              old_j = tj;
            }
          }
        }
        history.push_back(total);
        const auto window = static_cast<std::size_t>(cfg.stall_window);
        if (window > 0 && history.size() > window &&
            history[history.size() - 1 - window] - total <= kStallImprovement) {
          stalled = true;
          break;
        }
      }
    }
    // Refresh the running sum to shed accumulated rounding.
    total = 0.0;
    for (double t : terms) total += t;
    out.value = total;
    out.converged = stalled || (value_at_tail - total) <= tol.opt_tol;
    out.rows = std::move(rows);
    return out;
  }

 private:
  int da_;
  int db_;
  const PureValuation& valuation_;
};

Ensemble rows_to_ensemble(const CMatrix& rows, int da, int db) {
  std::vector<double> weights;
  std::vector<PureState> states;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    const double w = rows.row(i).squaredNorm();
    if (w <= 1e-300) continue;
    weights.push_back(w);
    states.emplace_back(da, db, CVector(rows.row(i).transpose() / std::sqrt(w)));
  }
  double sum = 0.0;
  for (double w : weights) sum += w;
  for (double& w : weights) w /= sum;
  return Ensemble{ProbVector(std::move(weights)), std::move(states)};
}

}  // namespace

RoofResult convex_roof(const DensityMatrix& rho, const PureValuation& valuation, const RoofConfig& cfg,
                       const Tolerance& tol) {
  if (!valuation) throw ValidationError("convex_roof: empty valuation");
  if (cfg.restarts <= 0 || cfg.max_iters <= 0 || cfg.ensemble_size < 0 || cfg.threads <= 0 ||
      !(cfg.initial_step > 0.0) || !(cfg.final_step > 0.0)) {
    throw ValidationError("convex_roof: configuration entries must be positive");
  }
  const int da = rho.da();
  const int db = rho.db();
  const SpectralDecomposition spec = spectral(rho, tol);

  std::vector<Eigen::Index> support;
  for (std::size_t k = 0; k < spec.values.size(); ++k) {
    if (spec.values[k] > tol.atol) support.push_back(static_cast<Eigen::Index>(k));
  }
  const auto rank = static_cast<Eigen::Index>(support.size());
  double kept = 0.0;
  for (auto k : support) kept += spec.values[static_cast<std::size_t>(k)];

  // Rows sqrt(lambda_k) v_k^T of the spectral ensemble.
  CMatrix base(rank, rho.dim());
  for (Eigen::Index r = 0; r < rank; ++r) {
    const double lam = spec.values[static_cast<std::size_t>(support[static_cast<std::size_t>(r)])] / kept;
    base.row(r) = std::sqrt(lam) * spec.vectors.entries().col(support[static_cast<std::size_t>(r)]).transpose();
  }

  RoofSearch search(da, db, valuation);
  if (rank == 1) {
    long evals = 0;
    const double v = search.term(base, 0, evals);
    return {v, rows_to_ensemble(base, da, db), true, evals};
  }

  const int m = cfg.resolved_ensemble_size(static_cast<int>(rank));
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(cfg.restarts));
  auto run_restart = [&](int k) {
    Rng rng(split_seed(cfg.seed, static_cast<std::uint64_t>(k)));
    CMatrix start = CMatrix::Zero(m, rho.dim());
    if (k == 0) {
      start.topRows(rank) = base;
    } else {
      const CMatrix w = haar_isometry(m, static_cast<int>(rank), rng);
      start = w * base;
    }
    outcomes[static_cast<std::size_t>(k)] = search.run(std::move(start), cfg, tol, rng);
  };

  const int workers = std::min(cfg.threads, cfg.restarts);
  if (workers <= 1) {
    for (int k = 0; k < cfg.restarts; ++k) run_restart(k);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int k = w; k < cfg.restarts; k += workers) run_restart(k);
      });
    }
  }

  // Deterministic reduction: strict improvement only, so ties keep the lowest index.
  std::size_t best = 0;
  long evaluations = 0;
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    evaluations += outcomes[k].evaluations;
    if (outcomes[k].value < outcomes[best].value) best = k;
  }
  const RestartOutcome& win = outcomes[best];
  return {win.value, rows_to_ensemble(win.rows, da, db), win.converged, evaluations};
}

}  // namespace pcoh
