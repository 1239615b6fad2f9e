#include "pcoh/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <numeric>
#include <thread>

#include "pcoh/entanglement.hpp"
#include "pcoh/errors.hpp"
#include "pcoh/json_io.hpp"
#include "pcoh/majorization.hpp"
#include "pcoh/oracle.hpp"
#include "pcoh/partial_coherence.hpp"
#include "pcoh/pio.hpp"
#include "pcoh/random.hpp"
#include "pcoh/scf.hpp"
#include "pcoh/states.hpp"

namespace pcoh::harness {

namespace {

constexpr int kMinPartyDim = 2;
constexpr int kMaxPartyDim = 8;

struct Check {
  std::string name;
  double slack;      // claimed bound minus observed
  double tolerance;  // violation when slack < -tolerance
};

struct Trial {
  std::vector<Check> checks;
  json inputs = json::object();
  std::map<std::string, long> counters;

  void check(std::string name, double slack, double tolerance) {
    checks.push_back({std::move(name), slack, tolerance});
  }
  void count(const std::string& key, long by = 1) { counters[key] += by; }
};

struct Context {
  const SuiteConfig& cfg;
  int index;
  std::uint64_t seed;
  int da;
  int db;
  int samples;
  RoofConfig roof;
};

using SuiteFn = Trial (*)(const Context&);

struct SuiteDef {
  std::string_view id;
  std::vector<std::pair<int, int>> dims;
  int samples;
  bool uses_roof;
  SuiteFn run;
};

std::uint64_t fnv1a(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

const std::vector<ScfDescriptor>& builtin_fs() { return ScfRegistry::builtin().all(); }

std::string fkey(const ScfDescriptor& f, std::string_view what) { return f.id + ":" + std::string(what); }

double pass_fail(bool ok) { return ok ? 0.0 : -1.0; }

// Pure state with a prescribed partial coherence vector and Haar conditional b-states.
PureState state_with_pcv(const std::vector<double>& q, int db, Rng& rng) {
  const int da = static_cast<int>(q.size());
  CVector amps(da * db);
  for (int i = 0; i < da; ++i) {
    const CVector b = haar_vector(db, rng);
    amps.segment(i * db, db) = std::sqrt(std::max(0.0, q[static_cast<std::size_t>(i)])) * b;
  }
  return PureState(da, db, std::move(amps));
}

PioRandomConfig random_pio_config(Rng& rng) {
  PioRandomConfig pc;
  pc.n_kraus = 2 + rng.index(2);
  pc.depth = 1 + rng.index(3);
  pc.seed = rng.engine()();
  return pc;
}

// ---------------------------------------------------------------- suites

Trial schur_horn_chain(const Context& c) {
  Rng rng(c.seed);
  const PureState s = haar_pure(c.da, c.db, rng);
  const ProbVector full = coherence_vectors(s, VectorMode::full);
  const ProbVector pa = coherence_vectors(s, VectorMode::a);
  const ProbVector p = schmidt_coefficients(s);
  Trial t;
  t.inputs["state"] = io::to_json(s);
  t.check("full_prec_a", majorization_slack(full, pa), 1e-10);
  t.check("a_prec_schmidt", majorization_slack(pa, p), 1e-10);
  return t;
}

Trial ineq_chain(const Context& c) {
  Rng rng(c.seed);
  const PureState s = haar_pure(c.da, c.db, rng);
  const ProbVector full = coherence_vectors(s, VectorMode::full);
  const ProbVector pa = coherence_vectors(s, VectorMode::a);
  const ProbVector p = schmidt_coefficients(s);
  Trial t;
  t.inputs["state"] = io::to_json(s);
  for (const auto& f : builtin_fs()) {
    const double vf = eval_scf(f, full);
    const double va = eval_scf(f, pa);
    const double vp = eval_scf(f, p);
    t.check(fkey(f, "full_ge_a"), vf - va, 1e-9);
    t.check(fkey(f, "a_ge_schmidt"), va - vp, 1e-9);
  }
  return t;
}

Trial pio_monotonicity(const Context& c) {
  Rng rng(c.seed);
  const PureState s = haar_pure(c.da, c.db, rng);
  Trial t;
  t.inputs["state"] = io::to_json(s);
  json channels = json::array();
  std::map<std::string, double> worst;
  double completeness = 0.0;
  for (int k = 0; k < c.samples; ++k) {
    const PioRandomConfig pc = random_pio_config(rng);
    const KrausSet kraus = random_pio(c.da, c.db, pc);
    channels.push_back({{"seed", pc.seed}, {"n_kraus", pc.n_kraus}, {"depth", pc.depth}});
    completeness = std::max(completeness, kraus.completeness_residual());
    const auto branches = branch_outcomes(kraus, s, c.cfg.tolerance);
    t.count("branches", static_cast<long>(branches.size()));
    for (const auto& f : builtin_fs()) {
      double avg = 0.0;
      for (const auto& b : branches) avg += b.probability * pcoh_pure(b.state, f, Party::a);
      const double slack = pcoh_pure(s, f, Party::a) - avg;
      const auto key = fkey(f, "branch_average");
      worst[key] = worst.contains(key) ? std::min(worst[key], slack) : slack;
    }
  }
  t.inputs["channels"] = std::move(channels);
  t.check("completeness", -completeness, 1e-10);
  for (const auto& [key, slack] : worst) t.check(key, slack, 1e-9);

  // The decohering map lands in the free set.
  const DensityMatrix dephased = partial_dephase(DensityMatrix::from_pure(s));
  RoofConfig quick;
  quick.restarts = 1;
  quick.max_iters = 1;
  quick.seed = c.seed;
  for (const auto& f : builtin_fs()) {
    const double v = pcoh_mixed(dephased, f, Party::a, quick, c.cfg.tolerance).value;
    t.check(fkey(f, "dephased"), -v, 1e-12);
  }
  return t;
}

struct IncomparablePair {
  Relation relation;
  bool forward_refused;
  bool backward_refused;
};

PureState embed_pcv(const std::vector<double>& q, int db) {
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(q.size()) * db);
  for (std::size_t i = 0; i < q.size(); ++i) amps[static_cast<Eigen::Index>(i) * db] = std::sqrt(q[i]);
  return PureState(static_cast<int>(q.size()), db, std::move(amps));
}

bool refuses(const PureState& src, const PureState& dst, const Tolerance& tol) {
  try {
    (void)synthesize_pio(src, dst, tol);
  } catch (const PreconditionError&) {
    return true;
  }
  return false;
}

IncomparablePair incomparable_pair(const Tolerance& tol) {
  const PureState psi = embed_pcv({0.5, 0.26, 0.24, 0.0}, 2);
  const PureState phi = embed_pcv({0.4, 0.4, 0.15, 0.05}, 2);
  return {majorization_relation(coherence_vectors(psi, VectorMode::a), coherence_vectors(phi, VectorMode::a), tol),
          refuses(psi, phi, tol), refuses(phi, psi, tol)};
}

Trial theorem1_roundtrip(const Context& c) {
  Rng rng(c.seed);
  const Tolerance& tol = c.cfg.tolerance;
  Trial t;

  // Target first, then a source whose vector is a T-transform ladder image of the target's.
  const PureState dst = haar_pure(c.da, c.db, rng);
  const ProbVector y = coherence_vectors(dst, VectorMode::a);
  std::vector<double> x = y.vec();
  for (int k = 0; k < c.da; ++k) {
    const auto i = static_cast<std::size_t>(rng.index(c.da));
    auto j = static_cast<std::size_t>(rng.index(c.da - 1));
    if (j >= i) ++j;
    x = apply_t_transform(x, i, j, rng.uniform());
  }
  std::shuffle(x.begin(), x.end(), rng.engine());
  const PureState src = state_with_pcv(x, c.db, rng);
  t.inputs["src"] = io::to_json(src);
  t.inputs["dst"] = io::to_json(dst);
  t.check("precondition", majorization_slack(coherence_vectors(src, VectorMode::a), y), 1e-10);

  const ChannelPipeline pipe = synthesize_pio(src, dst, tol);
  double defect = 0.0;
  double residual = 0.0;
  for (const auto& stage : pipe.stages()) {
    defect = std::max(defect, pio_structure_defect(stage));
    residual = std::max(residual, stage.completeness_residual());
  }
  t.count("stages", static_cast<long>(pipe.stages().size()));
  t.check("stage_structure", -defect, tol.atol);
  t.check("stage_completeness", -residual, 1e-10);
  const DensityMatrix out = apply_channel(pipe, DensityMatrix::from_pure(src), tol);
  t.check("fidelity", fidelity(dst, out) - 1.0, 1e-8);

  // Converse, sampled: Haar pairs whose vectors are not ordered must be refused.
  const PureState u = haar_pure(c.da, c.db, rng);
  const PureState v = haar_pure(c.da, c.db, rng);
  if (is_majorized_by(coherence_vectors(u, VectorMode::a), coherence_vectors(v, VectorMode::a), tol)) {
    t.count("converse_comparable");
  } else {
    const bool refused = refuses(u, v, tol) && !pio_convertible(u, v, tol);
    t.count("converse_refused", refused ? 1 : 0);
    t.check("converse_refused", pass_fail(refused), 0.0);
  }

  if (c.index == 0) {
    const IncomparablePair pp = incomparable_pair(tol);
    t.check("incomparable_pair_incomparable", pass_fail(pp.relation == Relation::incomparable), 0.0);
    t.check("incomparable_pair_forward_refused", pass_fail(pp.forward_refused), 0.0);
    t.check("incomparable_pair_backward_refused", pass_fail(pp.backward_refused), 0.0);
  }
  return t;
}

Trial theorem3(const Context& c) {
  Rng rng(c.seed);
  const PureState s = haar_pure(c.da, c.db, rng);
  const ProbVector p = schmidt_coefficients(s);
  const CMatrix id_a = CMatrix::Identity(c.da, c.da);
  const CMatrix id_b = CMatrix::Identity(c.db, c.db);
  const PureState sa = apply_local(s, analytic_min_unitary(s).entries(), id_b);
  const PureState sb = apply_local(s, id_a, analytic_min_unitary_b(s).entries());
  Trial t;
  t.inputs["state"] = io::to_json(s);

  const auto& fs = builtin_fs();
  std::vector<double> fp;
  for (const auto& f : fs) {
    fp.push_back(eval_scf(f, p));
    const double ca = pcoh_pure(sa, f, Party::a);
    const double cb = pcoh_pure(sb, f, Party::b);
    t.check(fkey(f, "analytic_a"), -std::abs(ca - fp.back()), 1e-9);
    t.check(fkey(f, "two_sided"), -std::abs(ca - cb), 1e-9);
    t.check(fkey(f, "ent_pure"), -std::abs(ent_pure(s, f) - fp.back()), 1e-9);
  }
  std::vector<double> lowest(fs.size(), std::numeric_limits<double>::infinity());
  for (int k = 0; k < c.samples; ++k) {
    const PureState st = apply_local(s, haar_unitary(c.da, rng).entries(), id_b);
    for (std::size_t i = 0; i < fs.size(); ++i) {
      lowest[i] = std::min(lowest[i], pcoh_pure(st, fs[i], Party::a) - fp[i]);
    }
  }
  t.count("unitaries", c.samples);
  if (c.samples > 0) {
    for (std::size_t i = 0; i < fs.size(); ++i) t.check(fkey(fs[i], "sampled_lower_bound"), lowest[i], 1e-9);
  }
  return t;
}

Trial theorem6(const Context& c) {
  Rng rng(c.seed);
  // Haar amplitudes on a random set of at most db rows keeps the support within db.
  const int support = std::min(c.da, c.db);
  std::vector<int> rows(static_cast<std::size_t>(c.da));
  std::iota(rows.begin(), rows.end(), 0);
  std::shuffle(rows.begin(), rows.end(), rng.engine());
  const CVector g = haar_vector(support * c.db, rng);
  CVector amps = CVector::Zero(c.da * c.db);
  for (int r = 0; r < support; ++r) amps.segment(rows[static_cast<std::size_t>(r)] * c.db, c.db) = g.segment(r * c.db, c.db);
  const PureState s(c.da, c.db, std::move(amps));
  const ProbVector pa = coherence_vectors(s, VectorMode::a);

  Trial t;
  t.inputs["state"] = io::to_json(s);
  const auto& fs = builtin_fs();
  const auto ortho = branch_outcomes(orthogonalizing_pio(s, c.cfg.tolerance), s, c.cfg.tolerance);
  std::vector<double> fa;
  for (const auto& f : fs) {
    fa.push_back(eval_scf(f, pa));
    double realized = 0.0;
    for (const auto& b : ortho) realized += b.probability * ent_pure(b.state, f);
    t.check(fkey(f, "orthogonalized"), -std::abs(realized - fa.back()), 1e-9);
  }

  std::vector<double> lowest(fs.size(), std::numeric_limits<double>::infinity());
  json channels = json::array();
  for (int k = 0; k < c.samples; ++k) {
    const PioRandomConfig pc = random_pio_config(rng);
    channels.push_back({{"seed", pc.seed}, {"n_kraus", pc.n_kraus}, {"depth", pc.depth}});
    const auto branches = branch_outcomes(random_pio(c.da, c.db, pc), s, c.cfg.tolerance);
    for (std::size_t i = 0; i < fs.size(); ++i) {
      double avg = 0.0;
      for (const auto& b : branches) avg += b.probability * ent_pure(b.state, fs[i]);
      lowest[i] = std::min(lowest[i], fa[i] - avg);
    }
  }
  t.inputs["channels"] = std::move(channels);
  t.count("instruments", c.samples);
  if (c.samples > 0) {
    for (std::size_t i = 0; i < fs.size(); ++i) t.check(fkey(fs[i], "upper_bound"), lowest[i], 1e-9);
  }
  return t;
}

Trial gf_concavity(const Context& c) {
  Rng rng(c.seed);
  const int d = c.da;
  const DensityMatrix r1 = ginibre_density(d, 1 + rng.index(d), rng);
  const DensityMatrix r2 = ginibre_density(d, 1 + rng.index(d), rng);
  const double w = rng.uniform();
  const DensityMatrix mixed = mix(r1, r2, w);
  const CMatrix u = haar_unitary(d, rng).entries();
  const DensityMatrix rotated = DensityMatrix::single(u * r1.entries() * u.adjoint());
  Trial t;
  t.inputs["rho1"] = io::to_json(r1);
  t.inputs["rho2"] = io::to_json(r2);
  t.inputs["r"] = w;
  for (const auto& f : builtin_fs()) {
    const double g1 = g_f(r1, f);
    const double g2 = g_f(r2, f);
    t.check(fkey(f, "concavity"), g_f(mixed, f) - (w * g1 + (1.0 - w) * g2), 1e-10);
    t.check(fkey(f, "unitary_invariance"), -std::abs(g_f(rotated, f) - g1), 1e-10);
  }
  return t;
}

constexpr double kOracleBelow = 1e-6;
constexpr double kOracleAbove = 5e-3;

Trial roof_oracle(const Context& c) {
  Rng rng(c.seed);
  Trial t;
  std::optional<DensityMatrix> rho;
  if (c.index < c.cfg.n) {
    const int rank = 1 + rng.index(2);
    rho = ginibre_density(2, 2, rank, rng);
    t.inputs["kind"] = "random";
    t.inputs["rank"] = rank;
  } else {
    const int werner = c.cfg.werner < 0 ? c.cfg.n / 5 : c.cfg.werner;
    const int w = c.index - c.cfg.n;
    const double lambda = werner > 1 ? static_cast<double>(w) / (werner - 1) : 1.0;
    rho = oracle::werner_state(lambda);
    t.inputs["kind"] = "werner";
    t.inputs["lambda"] = lambda;
  }
  t.inputs["rho"] = io::to_json(*rho);
  const RoofResult r = ent_mixed(*rho, scf("shannon"), c.roof, c.cfg.tolerance);
  const double gap = r.value - oracle::wootters_eof(*rho);
  t.inputs["gap"] = gap;
  t.count("converged", r.converged ? 1 : 0);
  t.count("bound_violated", gap < -kOracleBelow ? 1 : 0);
  t.count("budget_insufficient", gap > kOracleAbove ? 1 : 0);
  t.check("below_oracle", gap, kOracleBelow);
  t.check("above_oracle", -gap, kOracleAbove);
  return t;
}

constexpr double kIncoherentBound = 1e-6;
constexpr double kSeparableBound = 1e-4;

Trial faithfulness(const Context& c) {
  Rng rng(c.seed);
  const int d = c.da * c.db;
  auto mixture = [&](bool incoherent) {
    const int rank = 1 + rng.index(3);
    const ProbVector q = random_simplex(rank, rng);
    CMatrix rho = CMatrix::Zero(d, d);
    for (int k = 0; k < rank; ++k) {
      const CVector a = incoherent ? CVector(CVector::Unit(c.da, rng.index(c.da))) : haar_vector(c.da, rng);
      const CVector b = haar_vector(c.db, rng);
      const CVector v = kron(a, b);
      rho += q[static_cast<std::size_t>(k)] * v * v.adjoint();
    }
    return DensityMatrix(c.da, c.db, std::move(rho));
  };
  const DensityMatrix inc = mixture(true);
  const DensityMatrix sep = mixture(false);
  const double vi = pcoh_mixed(inc, scf("shannon"), Party::a, c.roof, c.cfg.tolerance).value;
  const double vs = ent_mixed(sep, scf("shannon"), c.roof, c.cfg.tolerance).value;
  Trial t;
  t.inputs["incoherent"] = io::to_json(inc);
  t.inputs["separable"] = io::to_json(sep);
  t.count("budget_insufficient", (vi > kIncoherentBound ? 1 : 0) + (vs > kSeparableBound ? 1 : 0));
  t.check("incoherent", -vi, kIncoherentBound);
  t.check("separable", -vs, kSeparableBound);
  return t;
}

std::vector<std::pair<int, int>> square_grid(int lo, int hi) {
  std::vector<std::pair<int, int>> out;
  for (int a = lo; a <= hi; ++a) {
    for (int b = lo; b <= hi; ++b) out.emplace_back(a, b);
  }
  return out;
}

const std::vector<SuiteDef>& suites() {
  static const std::vector<SuiteDef> all = {
      {"schur_horn_chain", square_grid(2, 6), 0, false, schur_horn_chain},
      {"ineq_chain", square_grid(2, 6), 0, false, ineq_chain},
      {"pio_monotonicity", {{2, 2}, {2, 3}, {3, 2}, {3, 3}, {4, 2}}, 1, false, pio_monotonicity},
      {"theorem1_roundtrip", {{3, 2}, {3, 3}, {4, 2}, {4, 3}, {5, 2}, {5, 3}}, 0, false, theorem1_roundtrip},
      {"theorem3", {{2, 2}, {3, 3}}, 2000, false, theorem3},
      {"theorem6", {{2, 2}, {2, 3}, {3, 3}, {3, 4}, {4, 4}}, 5, false, theorem6},
      {"gf_concavity", {{2, 2}, {3, 3}, {4, 4}}, 0, false, gf_concavity},
      {"roof_oracle", {{2, 2}}, 0, true, roof_oracle},
      {"faithfulness", {{2, 2}}, 0, true, faithfulness},
  };
  return all;
}

const SuiteDef& find_suite(std::string_view id) {
  for (const auto& s : suites()) {
    if (s.id == id) return s;
  }
  throw LookupError("unknown suite '" + std::string(id) + "'");
}

json dims_json(const std::vector<std::pair<int, int>>& dims) {
  json out = json::array();
  for (auto [a, b] : dims) out.push_back({a, b});
  return out;
}

}  // namespace

std::vector<std::string> suite_ids() {
  std::vector<std::string> out;
  for (const auto& s : suites()) out.emplace_back(s.id);
  return out;
}

std::vector<std::pair<int, int>> default_dims(std::string_view suite) { return find_suite(suite).dims; }

std::vector<std::pair<int, int>> parse_dims(std::string_view text) {
  std::vector<std::pair<int, int>> out;
  auto parse_int = [&](std::string_view tok) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty()) {
      throw ValidationError("dims: bad integer '" + std::string(tok) + "'");
    }
    return v;
  };
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view item = text.substr(pos, comma - pos);
    const std::size_t x = item.find('x');
    if (x == std::string_view::npos) throw ValidationError("dims: expected AxB, got '" + std::string(item) + "'");
    out.emplace_back(parse_int(item.substr(0, x)), parse_int(item.substr(x + 1)));
    pos = comma + 1;
  }
  return out;
}

Report run_suite(const SuiteConfig& cfg) {
  const SuiteDef& def = find_suite(cfg.suite);
  if (cfg.n < 1) throw ValidationError("run_suite: n must be at least 1");
  if (cfg.threads < 1) throw ValidationError("run_suite: threads must be at least 1");
  if (!cfg.tolerance.valid()) throw ValidationError("run_suite: invalid tolerance");
  const auto dims = cfg.dims.empty() ? def.dims : cfg.dims;
  for (auto [a, b] : dims) {
    if (a < kMinPartyDim || a > kMaxPartyDim || b < kMinPartyDim || b > kMaxPartyDim) {
      throw DimensionError("run_suite: party dimensions must lie in [2, 8], got " + std::to_string(a) + "x" +
                           std::to_string(b));
    }
  }
  if (def.id == "roof_oracle" && std::any_of(dims.begin(), dims.end(), [](auto d) { return d != std::pair{2, 2}; })) {
    throw DimensionError("run_suite: roof_oracle runs on two qubits only");
  }
  const int samples = cfg.samples >= 0 ? cfg.samples : def.samples;
  const int werner = cfg.werner < 0 ? cfg.n / 5 : cfg.werner;
  const int count = def.id == "roof_oracle" ? cfg.n + werner : cfg.n;

  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t base = split_seed(cfg.seed, fnv1a(def.id));
  std::vector<Trial> trials(static_cast<std::size_t>(count));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
  auto run_one = [&](int k) {
    const auto uk = static_cast<std::size_t>(k);
    const std::uint64_t seed = split_seed(base, static_cast<std::uint64_t>(k));
    const auto [da, db] = dims[uk % dims.size()];
    RoofConfig roof = cfg.roof;
    roof.seed = split_seed(seed, 0x726f6f66ULL);
    roof.threads = 1;
    try {
      trials[uk] = def.run(Context{cfg, k, seed, da, db, samples, roof});
    } catch (...) {
      errors[uk] = std::current_exception();
    }
  };
  const int workers = std::min(cfg.threads, count);
  if (workers <= 1) {
    for (int k = 0; k < count; ++k) run_one(k);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int k = w; k < count; k += workers) run_one(k);
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  Report r;
  r.suite = std::string(def.id);
  r.trials = count;
  r.seed = cfg.seed;
  r.max_violation = -std::numeric_limits<double>::infinity();
  r.tolerance = -std::numeric_limits<double>::infinity();
  struct Stat {
    long evaluations = 0;
    long violations = 0;
    double min_slack = std::numeric_limits<double>::infinity();
    double tolerance = -std::numeric_limits<double>::infinity();
  };
  std::map<std::string, Stat> stats;
  std::map<std::string, long> counters;
  long nonfinite = 0;
  for (int k = 0; k < count; ++k) {
    const Trial& t = trials[static_cast<std::size_t>(k)];
    bool violated = false;
    for (const auto& ch : t.checks) {
      const double tol = cfg.check_slack.value_or(ch.tolerance);
      double excess = -ch.slack;
      bool bad = ch.slack < -tol;
      if (!std::isfinite(ch.slack)) {
        ++nonfinite;
        excess = std::numeric_limits<double>::max();
        bad = true;
      }
      Stat& st = stats[ch.name];
      ++st.evaluations;
      st.min_slack = std::min(st.min_slack, -excess);
      st.tolerance = std::max(st.tolerance, tol);
      r.tolerance = std::max(r.tolerance, tol);
      if (bad) {
        ++st.violations;
        violated = true;
      }
      if (excess > r.max_violation) {
        r.max_violation = excess;
        r.worst_case = {{"trial", k},
                        {"trial_seed", split_seed(base, static_cast<std::uint64_t>(k))},
                        {"check", ch.name},
                        {"slack", ch.slack},
                        {"tolerance", tol},
                        {"inputs", t.inputs}};
      }
    }
    if (violated) ++r.violations;
    for (const auto& [key, v] : t.counters) counters[key] += v;
  }
  if (!std::isfinite(r.max_violation)) r.max_violation = 0.0;
  if (!std::isfinite(r.tolerance)) r.tolerance = 0.0;

  json checks = json::object();
  for (const auto& [name, st] : stats) {
    checks[name] = {{"evaluations", st.evaluations},
                    {"violations", st.violations},
                    {"min_slack", st.min_slack},
                    {"tolerance", st.tolerance}};
  }
  r.details = {{"checks", checks}, {"dims", dims_json(dims)}};
  if (!counters.empty()) r.details["counters"] = counters;
  if (nonfinite > 0) r.details["nonfinite_slacks"] = nonfinite;
  if (samples > 0) r.details["samples"] = samples;
  if (def.uses_roof) r.details["roof_budget"] = io::to_json(cfg.roof);
  if (def.id == "roof_oracle") r.details["werner"] = werner;
  if (def.id == "theorem1_roundtrip") {
    const IncomparablePair pp = incomparable_pair(cfg.tolerance);
    r.details["incomparable_pair"] = {{"relation", std::string(to_string(pp.relation))},
                               {"forward_refused", pp.forward_refused},
                               {"backward_refused", pp.backward_refused}};
  }
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

json report_to_json(const Report& r, bool include_timing) {
  json j = {{"suite", r.suite},
            {"trials", r.trials},
            {"violations", r.violations},
            {"max_violation", r.max_violation},
            {"tolerance", r.tolerance},
            {"worst_case", r.worst_case},
            {"seed", r.seed},
            {"details", r.details}};
  if (include_timing) j["wall_time"] = r.wall_time;
  return j;
}

Report report_from_json(const json& j) {
  Report r;
  r.suite = j.at("suite").get<std::string>();
  r.trials = j.at("trials").get<int>();
  r.violations = j.at("violations").get<int>();
  r.max_violation = j.at("max_violation").get<double>();
  r.tolerance = j.at("tolerance").get<double>();
  r.worst_case = j.value("worst_case", json());
  r.seed = j.at("seed").get<std::uint64_t>();
  r.wall_time = j.value("wall_time", 0.0);
  r.details = j.value("details", json());
  return r;
}

std::string encode_report(const Report& r, bool include_timing) { return io::dump(report_to_json(r, include_timing)); }

Report decode_report(std::string_view text) { return report_from_json(json::parse(text)); }

int exit_code(const Report& r) noexcept { return r.violations > 0 ? 3 : 0; }

}  // namespace pcoh::harness
