#include "pcoh/pio.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "pcoh/errors.hpp"
#include "pcoh/partial_coherence.hpp"
#include "pcoh/random.hpp"

namespace pcoh {

// ----------------------------------------------------------------- KrausSet

KrausSet::KrausSet(int da, int db, std::vector<CMatrix> kraus) : KrausSet(da, db, db, std::move(kraus)) {}

KrausSet::KrausSet(int da, int db_in, int db_out, std::vector<CMatrix> kraus)
    : da_(da), db_in_(db_in), db_out_(db_out), kraus_(std::move(kraus)) {
  if (da <= 0 || db_in <= 0 || db_out <= 0) throw DimensionError("KrausSet: dimensions must be positive");
  if (kraus_.empty()) throw DimensionError("KrausSet: no operators");
  for (const auto& k : kraus_) {
    if (k.rows() != dim_out() || k.cols() != dim_in()) {
      throw DimensionError("KrausSet: operator shape " + std::to_string(k.rows()) + "x" + std::to_string(k.cols()) +
                           " does not match " + std::to_string(dim_out()) + "x" + std::to_string(dim_in()));
    }
  }
}

double KrausSet::completeness_residual() const {
  CMatrix sum = CMatrix::Zero(dim_in(), dim_in());
  for (const auto& k : kraus_) sum.noalias() += k.adjoint() * k;
  return max_abs_diff(sum, CMatrix::Identity(dim_in(), dim_in()));
}

ChannelPipeline::ChannelPipeline(std::vector<KrausSet> stages) : stages_(std::move(stages)) {
  if (stages_.empty()) throw DimensionError("ChannelPipeline: no stages");
  for (std::size_t s = 1; s < stages_.size(); ++s) {
    if (stages_[s].da() != stages_[s - 1].da() || stages_[s].db_in() != stages_[s - 1].db_out()) {
      throw DimensionError("ChannelPipeline: stage " + std::to_string(s) + " dimensions do not chain");
    }
  }
}

double pio_structure_defect(const KrausSet& k) {
  const int da = k.da();
  const int bi = k.db_in();
  const int bo = k.db_out();
  double defect = 0.0;
  for (const auto& op : k.operators()) {
    for (int col = 0; col < da; ++col) {
      double first = 0.0;
      double second = 0.0;
      for (int row = 0; row < da; ++row) {
        const double n = op.block(row * bo, col * bi, bo, bi).norm();
        if (n > first) {
          second = first;
          first = n;
        } else if (n > second) {
          second = n;
        }
      }
      defect = std::max(defect, second);
    }
  }
  return defect;
}

bool has_pio_structure(const KrausSet& k, const Tolerance& tol) { return pio_structure_defect(k) <= tol.atol; }

bool is_pio_kraus_set(const KrausSet& k, const Tolerance& tol) {
  const double res = k.completeness_residual();
  if (res > tol.atol * k.dim_in()) {
    throw CompletenessError("is_pio_kraus_set: completeness residual " + std::to_string(res));
  }
  return has_pio_structure(k, tol);
}

DensityMatrix apply_channel(const KrausSet& k, const DensityMatrix& rho, const Tolerance& tol) {
  if (rho.da() != k.da() || rho.db() != k.db_in()) throw DimensionError("apply_channel: dimension mismatch");
  CMatrix out = CMatrix::Zero(k.dim_out(), k.dim_out());
  for (const auto& op : k.operators()) out.noalias() += op * rho.entries() * op.adjoint();
  return DensityMatrix(k.da(), k.db_out(), std::move(out), tol);
}

DensityMatrix apply_channel(const ChannelPipeline& p, const DensityMatrix& rho, const Tolerance& tol) {
  DensityMatrix cur = rho;
  for (const auto& stage : p.stages()) cur = apply_channel(stage, cur, tol);
  return cur;
}

std::vector<Branch> branch_outcomes(const KrausSet& k, const PureState& s, const Tolerance& tol) {
  if (s.da() != k.da() || s.db() != k.db_in()) throw DimensionError("branch_outcomes: dimension mismatch");
  std::vector<Branch> out;
  for (const auto& op : k.operators()) {
    CVector v = op * s.amps();
    const double p = v.squaredNorm();
    if (p <= tol.atol) continue;
    v /= std::sqrt(p);
    out.push_back({p, PureState(k.da(), k.db_out(), std::move(v))});
  }
  return out;
}

bool pio_convertible(const PureState& src, const PureState& dst, const Tolerance& tol) {
  if (src.da() != dst.da()) throw DimensionError("pio_convertible: party-a dimensions differ");
  return is_majorized_by(coherence_vectors(src, VectorMode::a), coherence_vectors(dst, VectorMode::a), tol);
}

// ---------------------------------------------------------- common channels

KrausSet dephasing_channel(int da, int db) {
  std::vector<CMatrix> ops;
  for (int i = 0; i < da; ++i) {
    CMatrix k = CMatrix::Zero(da * db, da * db);
    k.block(i * db, i * db, db, db).setIdentity();
    ops.push_back(std::move(k));
  }
  return KrausSet(da, db, std::move(ops));
}

KrausSet unitary_channel(int da, int db, const CMatrix& u) { return KrausSet(da, db, {u}); }

KrausSet controlled_unitary(const std::vector<CMatrix>& blocks) {
  if (blocks.empty()) throw DimensionError("controlled_unitary: no blocks");
  const int da = static_cast<int>(blocks.size());
  const auto db = static_cast<int>(blocks.front().rows());
  CMatrix u = CMatrix::Zero(da * db, da * db);
  for (int i = 0; i < da; ++i) {
    if (blocks[static_cast<std::size_t>(i)].rows() != db || blocks[static_cast<std::size_t>(i)].cols() != db) {
      throw DimensionError("controlled_unitary: blocks differ in size");
    }
    u.block(i * db, i * db, db, db) = blocks[static_cast<std::size_t>(i)];
  }
  return KrausSet(da, db, {std::move(u)});
}

// ---------------------------------------------------------------- synthesis

namespace {

struct ConditionalForm {
  std::vector<double> weights;  // party-a vector
  std::vector<CVector> b_states; // normalized conditional b-states; empty where weight ~ 0
};

ConditionalForm conditional_form(const PureState& s, double cutoff) {
  ConditionalForm out;
  const CMatrix m = s.coefficient_matrix();
  for (int i = 0; i < s.da(); ++i) {
    const double w = m.row(i).squaredNorm();
    out.weights.push_back(w);
    if (w > cutoff) {
      out.b_states.emplace_back(m.row(i).transpose() / std::sqrt(w));
    } else {
      out.b_states.emplace_back();
    }
  }
  return out;
}

std::vector<std::size_t> argsort_desc(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&v](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  return idx;
}

// One spreading step: coordinates (p, q) move from (src_p, src_q) to
// (dst_p, dst_q) with dst_p >= dst_q and the source pair majorized by the target.
struct SpreadStep {
  std::size_t p;
  std::size_t q;
  double src_p;
  double src_q;
  double dst_p;
  double dst_q;
};

// Ladder of T-transforms taking the sorted target down to the sorted source,
// returned in application order (source towards target).
std::vector<SpreadStep> spreading_ladder(const std::vector<double>& xs, const std::vector<double>& ys) {
  constexpr double eps = 1e-14;
  const std::size_t n = xs.size();
  std::vector<double> w = ys;
  std::vector<SpreadStep> steps;
  for (std::size_t guard = 0; guard < n; ++guard) {
    std::optional<std::size_t> j;
    for (std::size_t i = n; i-- > 0;) {
      if (w[i] - xs[i] > eps) {
        j = i;
        break;
      }
    }
    if (!j) break;
    std::optional<std::size_t> k;
    for (std::size_t i = *j + 1; i < n; ++i) {
      if (xs[i] - w[i] > eps) {
        k = i;
        break;
      }
    }
    if (!k) break;
    const double delta = std::min(w[*j] - xs[*j], xs[*k] - w[*k]);
    SpreadStep st{*j, *k, w[*j] - delta, w[*k] + delta, w[*j], w[*k]};
    w[*j] = st.src_p;
    w[*k] = st.src_q;
    steps.push_back(st);
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

// Two-outcome incoherent instrument on party a realizing one spreading step
// deterministically; tensored with 1_b.
KrausSet spreading_instrument(int da, int db, std::size_t p, std::size_t q, double a, double b, double c, double d) {
  const double gap = c - d;
  const double r = gap > 0.0 ? std::clamp((a - b) / gap, -1.0, 1.0) : 1.0;
  const double lam = std::sqrt(0.5 * (1.0 + r));
  const double mu = std::sqrt(0.5 * (1.0 - r));

  CMatrix k1 = CMatrix::Identity(da, da) * lam;
  CMatrix k2 = CMatrix::Identity(da, da) * mu;
  const auto ip = static_cast<Eigen::Index>(p);
  const auto iq = static_cast<Eigen::Index>(q);
  k2(ip, ip) = 0.0;
  k2(iq, iq) = 0.0;

  // Column p: K1(p,p) = lam sqrt(c/a), K2(q,p) = mu sqrt(d/a).
  double x1 = 1.0;
  double x2 = 0.0;
  if (a > 0.0) {
    x1 = lam * std::sqrt(c / a);
    x2 = mu * std::sqrt(d / a);
    const double nrm = std::hypot(x1, x2);
    x1 /= nrm;
    x2 /= nrm;
  }
  k1(ip, ip) = x1;
  k2(iq, ip) = x2;
  // Column q: K1(q,q) = lam sqrt(d/b), K2(p,q) = mu sqrt(c/b).
  double y1 = 1.0;
  double y2 = 0.0;
  if (b > 0.0) {
    y1 = lam * std::sqrt(d / b);
    y2 = mu * std::sqrt(c / b);
    const double nrm = std::hypot(y1, y2);
    y1 /= nrm;
    y2 /= nrm;
  }
  k1(iq, iq) = y1;
  k2(ip, iq) = y2;

  const CMatrix id_b = CMatrix::Identity(db, db);
  std::vector<CMatrix> ops;
  if (k1.norm() > 0.0) ops.push_back(kron(k1, id_b));
  if (k2.norm() > 0.0) ops.push_back(kron(k2, id_b));
  return KrausSet(da, db, std::move(ops));
}

}  // namespace

ChannelPipeline synthesize_pio(const PureState& src, const PureState& dst, const Tolerance& tol) {
  if (src.da() != dst.da()) throw DimensionError("synthesize_pio: party-a dimensions differ");
  if (!pio_convertible(src, dst, tol)) {
    throw PreconditionError("synthesize_pio: source partial coherence vector is not majorized by the target's");
  }
  const int da = src.da();
  const int db_in = src.db();
  const int db_out = dst.db();
  const ConditionalForm from = conditional_form(src, 0.0);
  const ConditionalForm to = conditional_form(dst, 0.0);
  std::vector<KrausSet> stages;

  // Stage 1: collapse every conditional b-state onto |0>_b.
  const CVector ref_in = CVector::Unit(db_in, 0);
  std::vector<CMatrix> blocks;
  for (int i = 0; i < da; ++i) {
    const auto& bs = from.b_states[static_cast<std::size_t>(i)];
    blocks.push_back(bs.size() == 0 ? CMatrix(CMatrix::Identity(db_in, db_in)) : unitary_mapping(bs, ref_in));
  }
  stages.push_back(controlled_unitary(blocks));

  // Middle stages: spreading ladder on party a in sorted coordinates.
  const std::vector<std::size_t> sigma = argsort_desc(from.weights);
  const std::vector<std::size_t> tau = argsort_desc(to.weights);
  std::vector<double> xs(static_cast<std::size_t>(da));
  std::vector<double> ys(static_cast<std::size_t>(da));
  for (std::size_t r = 0; r < xs.size(); ++r) {
    xs[r] = from.weights[sigma[r]];
    ys[r] = to.weights[tau[r]];
  }
  for (const SpreadStep& st : spreading_ladder(xs, ys)) {
    if (st.dst_p - st.dst_q <= 0.0) continue;
    stages.push_back(
        spreading_instrument(da, db_in, sigma[st.p], sigma[st.q], st.src_p, st.src_q, st.dst_p, st.dst_q));
  }

  // Last stage: route rank r from coordinate sigma(r) to tau(r) and prepare
  // the target conditional b-state there.
  const CVector ref_out = CVector::Unit(db_out, 0);
  auto target_b = [&](std::size_t i) -> CVector {
    const auto& bs = to.b_states[i];
    return bs.size() == 0 ? ref_out : bs;
  };
  std::vector<CMatrix> last;
  if (db_in == db_out) {
    CMatrix u = CMatrix::Zero(da * db_out, da * db_in);
    for (std::size_t r = 0; r < sigma.size(); ++r) {
      const auto row = static_cast<Eigen::Index>(tau[r]);
      const auto col = static_cast<Eigen::Index>(sigma[r]);
      u.block(row * db_out, col * db_in, db_out, db_in) = unitary_mapping(ref_in, target_b(tau[r]));
    }
    last.push_back(std::move(u));
  } else {
    // Discard the b register and prepare the target state: one operator per
    // input basis vector |k>_b.
    for (int k = 0; k < db_in; ++k) {
      CMatrix op = CMatrix::Zero(da * db_out, da * db_in);
      for (std::size_t r = 0; r < sigma.size(); ++r) {
        const auto row = static_cast<Eigen::Index>(tau[r]);
        const auto col = static_cast<Eigen::Index>(sigma[r]);
        op.block(row * db_out, col * db_in + k, db_out, 1) = target_b(tau[r]);
      }
      last.push_back(std::move(op));
    }
  }
  stages.emplace_back(da, db_in, db_out, std::move(last));
  return ChannelPipeline(std::move(stages));
}

PureState maximal_state(int da, const std::vector<CVector>& b_states) {
  if (da <= 0) throw DimensionError("maximal_state: da must be positive");
  if (b_states.size() != static_cast<std::size_t>(da)) throw DimensionError("maximal_state: need da b-states");
  const auto db = b_states.front().size();
  if (db == 0) throw DimensionError("maximal_state: empty b-state");
  CVector v(da * db);
  for (int i = 0; i < da; ++i) {
    const CVector& b = b_states[static_cast<std::size_t>(i)];
    if (b.size() != db) throw DimensionError("maximal_state: b-states differ in dimension");
    if (std::abs(b.norm() - 1.0) > kRenormalizeLimit) {
      throw ValidationError("maximal_state: b-state " + std::to_string(i) + " is not normalized");
    }
    v.segment(i * db, db) = b / (b.norm() * std::sqrt(static_cast<double>(da)));
  }
  return PureState(da, static_cast<int>(db), std::move(v));
}

PureState maximal_state(int da, int db) {
  return maximal_state(da, std::vector<CVector>(static_cast<std::size_t>(da), CVector::Unit(db, 0)));
}

ChannelPipeline prepare_from_maximal(const DensityMatrix& rho, const PureState& maximal, const Tolerance& tol) {
  if (maximal.da() != rho.da()) throw DimensionError("prepare_from_maximal: party-a dimensions differ");
  const SpectralDecomposition spec = spectral(rho, tol);
  std::vector<CMatrix> ops;
  for (std::size_t k = 0; k < spec.values.size(); ++k) {
    const double q = spec.values[k];
    if (q <= 0.0) continue;
    const PureState y(rho.da(), rho.db(), spec.vectors.entries().col(static_cast<Eigen::Index>(k)));
    const KrausSet flat = flatten_pipeline(synthesize_pio(maximal, y, tol));
    for (const auto& op : flat.operators()) ops.push_back(std::sqrt(q) * op);
  }
  return ChannelPipeline({KrausSet(rho.da(), maximal.db(), rho.db(), std::move(ops))});
}

ChannelPipeline prepare_from_maximal(const DensityMatrix& rho, const Tolerance& tol) {
  return prepare_from_maximal(rho, maximal_state(rho.da(), rho.db()), tol);
}

KrausSet flatten_pipeline(const ChannelPipeline& p, std::size_t cap) {
  std::size_t count = 1;
  for (const auto& st : p.stages()) {
    count *= st.size();
    if (count > cap) {
      throw DimensionError("flatten_pipeline: more than " + std::to_string(cap) + " Kraus products");
    }
  }
  std::vector<CMatrix> acc = p.stages().front().operators();
  for (std::size_t s = 1; s < p.stages().size(); ++s) {
    std::vector<CMatrix> next;
    next.reserve(acc.size() * p.stages()[s].size());
    for (const auto& a : acc) {
      for (const auto& k : p.stages()[s].operators()) {
        CMatrix prod = k * a;
        if (prod.squaredNorm() > 1e-30) next.push_back(std::move(prod));
      }
    }
    acc = std::move(next);
  }
  if (acc.empty()) throw Error("flatten_pipeline: every product vanished");
  return KrausSet(p.da(), p.db_in(), p.db_out(), std::move(acc));
}

KrausSet orthogonalizing_pio(const PureState& s, const Tolerance& tol) {
  const int da = s.da();
  const int db = s.db();
  const ConditionalForm form = conditional_form(s, tol.atol);
  int support = 0;
  for (double w : form.weights) support += w > tol.atol ? 1 : 0;
  if (support > db) {
    throw PreconditionError("orthogonalizing_pio: support of the partial coherence vector (" +
                            std::to_string(support) + ") exceeds db (" + std::to_string(db) + ")");
  }
  std::vector<CMatrix> blocks;
  int next = 0;
  for (int i = 0; i < da; ++i) {
    const auto& bs = form.b_states[static_cast<std::size_t>(i)];
    if (bs.size() == 0) {
      blocks.emplace_back(CMatrix::Identity(db, db));
    } else {
      blocks.push_back(unitary_mapping(bs, CVector::Unit(db, next++)));
    }
  }
  return controlled_unitary(blocks);
}

// ------------------------------------------------------------ random PIO

namespace {

KrausSet random_layer(int da, int db, PioLayerKind kind, int n_kraus, Rng& rng) {
  switch (kind) {
    case PioLayerKind::controlled_unitary: {
      std::vector<CMatrix> blocks;
      for (int i = 0; i < da; ++i) blocks.push_back(haar_unitary(db, rng).entries());
      return controlled_unitary(blocks);
    }
    case PioLayerKind::incoherent_instrument: {
      // weights[n][j]: modulus of column j in operator n, columns normalized over n.
      std::vector<std::vector<double>> weights(static_cast<std::size_t>(n_kraus),
                                               std::vector<double>(static_cast<std::size_t>(da)));
      for (int j = 0; j < da; ++j) {
        double norm2 = 0.0;
        for (auto& w : weights) {
          w[static_cast<std::size_t>(j)] = rng.uniform();
          norm2 += w[static_cast<std::size_t>(j)] * w[static_cast<std::size_t>(j)];
        }
        for (auto& w : weights) w[static_cast<std::size_t>(j)] /= std::sqrt(norm2);
      }
      const CMatrix id_b = CMatrix::Identity(db, db);
      std::vector<CMatrix> ops;
      for (int n = 0; n < n_kraus; ++n) {
        std::vector<int> perm(static_cast<std::size_t>(da));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng.engine());
        CMatrix k = CMatrix::Zero(da, da);
        for (int j = 0; j < da; ++j) {
          k(perm[static_cast<std::size_t>(j)], j) = weights[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)];
        }
        ops.push_back(kron(k, id_b));
      }
      return KrausSet(da, db, std::move(ops));
    }
    case PioLayerKind::local_b_channel: {
      const CMatrix v = haar_isometry(db * n_kraus, db, rng);
      const CMatrix id_a = CMatrix::Identity(da, da);
      std::vector<CMatrix> ops;
      for (int n = 0; n < n_kraus; ++n) ops.push_back(kron(id_a, v.middleRows(n * db, db)));
      return KrausSet(da, db, std::move(ops));
    }
  }
  throw Error("random_layer: unknown layer kind");
}

}  // namespace

KrausSet random_pio(int da, int db, const PioRandomConfig& cfg) {
  if (da <= 0 || db <= 0) throw DimensionError("random_pio: dimensions must be positive");
  if (cfg.n_kraus <= 0 || cfg.depth <= 0) throw ValidationError("random_pio: n_kraus and depth must be positive");
  Rng rng(cfg.seed);
  std::vector<KrausSet> layers;
  for (int l = 0; l < cfg.depth; ++l) {
    const auto kind = cfg.only ? *cfg.only : static_cast<PioLayerKind>(rng.index(3));
    layers.push_back(random_layer(da, db, kind, cfg.n_kraus, rng));
  }
  return flatten_pipeline(ChannelPipeline(std::move(layers)));
}

}  // namespace pcoh
