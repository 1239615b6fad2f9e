#include "dispatch.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "pcoh/entanglement.hpp"
#include "pcoh/errors.hpp"
#include "pcoh/harness.hpp"
#include "pcoh/json_io.hpp"
#include "pcoh/majorization.hpp"
#include "pcoh/majorization_exact.hpp"
#include "pcoh/partial_coherence.hpp"
#include "pcoh/pio.hpp"
#include "pcoh/scf.hpp"
#include "pcoh/states.hpp"

namespace pcoh::cli {

namespace {

using json = nlohmann::json;

struct Options {
  std::string state;
  std::string from;
  std::string to;
  std::string catalyst;
  std::string f = "shannon";
  std::string party = "a";
  std::string suite;
  int n = 100;
  std::string dims;
  std::uint64_t seed = 0;
  int restarts = -1;
  int samples = -1;
  int threads = 1;
  int werner = -1;
  std::string out;
  bool flatten = false;
  bool rational = false;
  bool timing = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

io::StateFile load_state(const std::string& path) { return io::state_file_from_json(io::read_json_file(path)); }

PureState load_pure(const std::string& path) {
  auto s = load_state(path);
  if (auto* p = std::get_if<PureState>(&s)) return *p;
  throw ValidationError("'" + path + "' is not a pure state file");
}

DensityMatrix load_density(const std::string& path) {
  auto s = load_state(path);
  if (auto* p = std::get_if<PureState>(&s)) return DensityMatrix::from_pure(*p);
  if (auto* r = std::get_if<DensityMatrix>(&s)) return *r;
  throw ValidationError("'" + path + "' is not a state file");
}

// A probability vector file, or the partial coherence vector of a pure state file.
ProbVector load_vector(const std::string& path) {
  auto s = load_state(path);
  if (auto* p = std::get_if<ProbVector>(&s)) return *p;
  if (auto* ps = std::get_if<PureState>(&s)) return coherence_vectors(*ps, VectorMode::a);
  throw ValidationError("'" + path + "' holds a density matrix; expected a pure state or a vector");
}

RationalProbVector load_rational(const std::string& path) { return io::rational_prob_from_json(io::read_json_file(path)); }

Party party_of(const Options& o) {
  if (o.party == "full") throw UsageError("--party must be a or b for this verb");
  return parse_party(o.party);
}

RoofConfig roof_of(const Options& o) {
  RoofConfig cfg;
  if (o.restarts > 0) cfg.restarts = o.restarts;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  return cfg;
}

json channel_json(const ChannelPipeline& p, bool flatten) {
  if (!flatten) return io::to_json(p);
  return io::to_json(ChannelPipeline(std::vector<KrausSet>{flatten_pipeline(p)}));
}

json run_pcv(const Options& o) {
  const PureState s = load_pure(o.state);
  json j = io::to_json(coherence_vectors(s, parse_vector_mode(o.party)));
  j["mode"] = o.party;
  return j;
}

json run_schmidt(const Options& o) {
  const SchmidtDecomposition sd = schmidt(load_pure(o.state));
  return {{"p", io::to_json(sd.coeffs).at("p")}, {"basis_a", io::to_json(sd.basis_a)}, {"basis_b", io::to_json(sd.basis_b)}};
}

json run_measure(const Options& o) {
  const ScfDescriptor& f = scf(o.f);
  const Party party = party_of(o);
  auto s = load_state(o.state);
  if (auto* p = std::get_if<PureState>(&s)) return {{"value", pcoh_pure(*p, f, party)}};
  if (auto* r = std::get_if<DensityMatrix>(&s)) {
    json j = io::to_json(pcoh_mixed(*r, f, party, roof_of(o)));
    j["f"] = f.id;
    j["seed"] = o.seed;
    return j;
  }
  throw ValidationError("measure: '" + o.state + "' is not a state file");
}

json run_entangle(const Options& o) {
  const ScfDescriptor& f = scf(o.f);
  auto s = load_state(o.state);
  if (auto* p = std::get_if<PureState>(&s)) {
    const int n = std::max(o.samples, 0);
    const double value = n > 0 ? sampled_min_partial_coherence(*p, f, n, o.seed).value : ent_pure(*p, f);
    return {{"value", value}, {"f", f.id}, {"seed", o.seed}, {"samples", n}};
  }
  if (auto* r = std::get_if<DensityMatrix>(&s)) {
    json j = io::to_json(ent_mixed(*r, f, roof_of(o)));
    j["f"] = f.id;
    j["seed"] = o.seed;
    return j;
  }
  throw ValidationError("entangle: '" + o.state + "' is not a state file");
}

json relation_json(Relation rel) {
  const bool convertible = rel == Relation::forward || rel == Relation::equivalent;
  return {{"convertible", convertible}, {"relation", std::string(to_string(rel))}};
}

json run_convert_check(const Options& o) {
  if (o.rational) return relation_json(majorization_relation(load_rational(o.from), load_rational(o.to)));
  return relation_json(majorization_relation(load_vector(o.from), load_vector(o.to)));
}

json run_catalyst_check(const Options& o) {
  const CatalysisResult r = o.rational
                                ? is_catalyst(load_rational(o.catalyst), load_rational(o.from), load_rational(o.to))
                                : is_catalyst(load_vector(o.catalyst), load_vector(o.from), load_vector(o.to));
  return {{"result", std::string(to_string(r))}};
}

json run_synthesize(const Options& o) {
  return channel_json(synthesize_pio(load_pure(o.from), load_pure(o.to)), o.flatten);
}

std::pair<int, int> single_dims(const Options& o) {
  const auto dims = harness::parse_dims(o.dims);
  if (dims.size() != 1) throw UsageError("--dims must name exactly one AxB pair here");
  return dims.front();
}

json run_maximal(const Options& o) {
  if (o.dims.empty() == o.state.empty()) throw UsageError("maximal needs exactly one of --dims or --state");
  int da = 0;
  int db = 0;
  if (!o.dims.empty()) {
    std::tie(da, db) = single_dims(o);
  } else {
    const DensityMatrix r = load_density(o.state);
    da = r.da();
    db = r.db();
  }
  return io::to_json(maximal_state(da, db));
}

json run_prepare(const Options& o) {
  const DensityMatrix rho = load_density(o.state);
  return {{"maximal", io::to_json(maximal_state(rho.da(), rho.db()))},
          {"channel", channel_json(prepare_from_maximal(rho), o.flatten)}};
}

int run_verify(const Options& o, std::ostream& out) {
  harness::SuiteConfig cfg;
  cfg.suite = o.suite;
  cfg.n = o.n;
  if (!o.dims.empty()) cfg.dims = harness::parse_dims(o.dims);
  cfg.seed = o.seed;
  cfg.samples = o.samples;
  cfg.werner = o.werner;
  cfg.threads = o.threads;
  if (o.restarts > 0) cfg.roof.restarts = o.restarts;
  const harness::Report r = harness::run_suite(cfg);
  const std::string text = harness::encode_report(r, o.timing);
  if (!o.out.empty()) io::write_json_file(o.out, json::parse(text));
  out << text << '\n';
  return harness::exit_code(r);
}

std::uint64_t parse_env_seed(const std::string& s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw UsageError("PCOH_SEED must be a non-negative integer, got '" + s + "'");
  }
  return v;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
             const std::optional<std::string>& env_seed) {
  CLI::App app{"Partial coherence toolbox", "pcoh"};
  app.require_subcommand(1);
  Options o;

  auto add_f = [&](CLI::App* c) { c->add_option("--f", o.f, "symmetric concave function id"); };
  auto add_seed = [&](CLI::App* c) { return c->add_option("--seed", o.seed, "RNG seed (falls back to PCOH_SEED)"); };
  auto add_out = [&](CLI::App* c) { c->add_option("--out", o.out, "also write the JSON document to this file"); };
  auto add_roof = [&](CLI::App* c) {
    c->add_option("--restarts", o.restarts, "convex-roof restarts")->check(CLI::PositiveNumber);
    c->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
  };

  auto* pcv = app.add_subcommand("pcv", "partial coherence vector of a pure state");
  pcv->add_option("--state", o.state)->required();
  pcv->add_option("--party", o.party)->check(CLI::IsMember({"a", "b", "full"}));

  auto* sch = app.add_subcommand("schmidt", "Schmidt decomposition of a pure state");
  sch->add_option("--state", o.state)->required();

  auto* mea = app.add_subcommand("measure", "partial coherence measure");
  mea->add_option("--state", o.state)->required();
  mea->add_option("--party", o.party)->check(CLI::IsMember({"a", "b"}));
  add_f(mea);
  std::vector<CLI::Option*> seeds{add_seed(mea)};
  add_roof(mea);

  auto* ent = app.add_subcommand("entangle", "induced entanglement measure");
  ent->add_option("--state", o.state)->required();
  ent->add_option("--samples", o.samples, "Haar unitaries for the sampled minimization")->check(CLI::NonNegativeNumber);
  add_f(ent);
  seeds.push_back(add_seed(ent));
  add_roof(ent);

  auto* conv = app.add_subcommand("convert-check", "PIO convertibility via majorization");
  conv->add_option("--from", o.from)->required();
  conv->add_option("--to", o.to)->required();
  conv->add_flag("--rational", o.rational, "exact rational arithmetic");

  auto* cat = app.add_subcommand("catalyst-check", "catalysis via tensor majorization");
  cat->add_option("--from", o.from)->required();
  cat->add_option("--to", o.to)->required();
  cat->add_option("--catalyst", o.catalyst)->required();
  cat->add_flag("--rational", o.rational, "exact rational arithmetic");

  auto* syn = app.add_subcommand("synthesize", "explicit PIO between pure states");
  syn->add_option("--from", o.from)->required();
  syn->add_option("--to", o.to)->required();
  syn->add_flag("--flatten", o.flatten, "emit a single-stage channel");

  auto* max = app.add_subcommand("maximal", "maximal partial coherent state");
  max->add_option("--dims", o.dims, "AxB");
  max->add_option("--state", o.state, "take dimensions from this state");

  auto* pre = app.add_subcommand("prepare", "PIO preparing a state from the maximal state");
  pre->add_option("--state", o.state)->required();
  pre->add_flag("--flatten", o.flatten, "emit a single-stage channel");

  auto* ver = app.add_subcommand("verify", "run a verification suite");
  ver->add_option("--suite", o.suite)->required();
  ver->add_option("--n", o.n)->check(CLI::PositiveNumber);
  ver->add_option("--dims", o.dims, "comma-separated AxB list");
  ver->add_option("--samples", o.samples)->check(CLI::NonNegativeNumber);
  ver->add_option("--werner", o.werner, "roof_oracle Werner states (default n/5)")->check(CLI::NonNegativeNumber);
  ver->add_flag("--timing", o.timing, "include wall_time in the report");
  seeds.push_back(add_seed(ver));
  add_roof(ver);

  for (auto* c : {pcv, sch, mea, ent, conv, cat, syn, max, pre, ver}) add_out(c);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    err << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "pcoh: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    const bool seed_given = std::any_of(seeds.begin(), seeds.end(), [](CLI::Option* s) { return s->count() > 0; });
    if (!seed_given && env_seed) o.seed = parse_env_seed(*env_seed);

    if (ver->parsed()) return run_verify(o, out);

    json result;
    if (pcv->parsed()) result = run_pcv(o);
    else if (sch->parsed()) result = run_schmidt(o);
    else if (mea->parsed()) result = run_measure(o);
    else if (ent->parsed()) result = run_entangle(o);
    else if (conv->parsed()) result = run_convert_check(o);
    else if (cat->parsed()) result = run_catalyst_check(o);
    else if (syn->parsed()) result = run_synthesize(o);
    else if (max->parsed()) result = run_maximal(o);
    else if (pre->parsed()) result = run_prepare(o);
    if (!o.out.empty()) io::write_json_file(o.out, result);
    out << io::dump(result) << '\n';
    return kOk;
  } catch (const UsageError& e) {
    err << "pcoh: " << e.what() << '\n';
    return kUsageError;
  } catch (const LookupError& e) {
    err << "pcoh: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    err << "pcoh: " << e.what() << '\n';
    return kDomainError;
  } catch (const json::exception& e) {
    err << "pcoh: malformed JSON input: " << e.what() << '\n';
    return kDomainError;
  } catch (const std::exception& e) {
    err << "pcoh: " << e.what() << '\n';
    return kDomainError;
  }
}

}  // namespace pcoh::cli
