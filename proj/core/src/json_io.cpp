#include "pcoh/json_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "pcoh/errors.hpp"

namespace pcoh::io {

namespace {

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("JSON: missing key '") + key + "'");
  return j.at(key);
}

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw ValidationError("JSON: complex numbers are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

Rational rational_from_json(const json& j) {
  auto part = [](const json& x) -> Rational {
    if (x.is_string()) return parse_rational(x.get<std::string>());
    if (x.is_number_integer()) return Rational(x.get<long long>());
    throw ValidationError("JSON: rational parts must be integers or strings");
  };
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  // Decimal literals are read as written: 0.26 is 13/50.
  if (j.is_number_float()) return parse_rational(j.dump());
  if (!j.is_array() || j.size() != 2) throw ValidationError("JSON: rationals are [num, den] pairs");
  const Rational den = part(j[1]);
  if (den == 0) throw ValidationError("JSON: zero denominator");
  return part(j[0]) / den;
}

// Integers beyond 64 bits travel as decimal strings.
json integer_json(const boost::multiprecision::cpp_int& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max()) {
    return static_cast<long long>(v);
  }
  return v.str();
}

}  // namespace

json to_json(const CVector& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back({v[k].real(), v[k].imag()});
  return out;
}

json to_json(const CMatrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    out.push_back(std::move(row));
  }
  return out;
}

CVector vector_from_json(const json& j) {
  if (!j.is_array()) throw ValidationError("JSON: expected an array of complex numbers");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v[static_cast<Eigen::Index>(k)] = complex_from_json(j[k]);
  return v;
}

CMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw ValidationError("JSON: expected a matrix");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ValidationError("JSON: ragged matrix");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

json to_json(const PureState& s) { return {{"da", s.da()}, {"db", s.db()}, {"amps", to_json(s.amps())}}; }

PureState pure_from_json(const json& j) {
  return PureState(require(j, "da").get<int>(), require(j, "db").get<int>(), vector_from_json(require(j, "amps")));
}

json to_json(const DensityMatrix& rho) {
  if (rho.db() == 1) return {{"d", rho.da()}, {"entries", to_json(rho.entries())}};
  return {{"da", rho.da()}, {"db", rho.db()}, {"entries", to_json(rho.entries())}};
}

DensityMatrix density_from_json(const json& j) {
  CMatrix m = matrix_from_json(require(j, "entries"));
  if (j.contains("da") || j.contains("db")) {
    return DensityMatrix(require(j, "da").get<int>(), require(j, "db").get<int>(), std::move(m));
  }
  const int d = require(j, "d").get<int>();
  return DensityMatrix(d, 1, std::move(m));
}

json to_json(const ProbVector& p) { return {{"p", p.vec()}}; }

ProbVector prob_from_json(const json& j) { return ProbVector(require(j, "p").get<std::vector<double>>()); }

json to_json(const RationalProbVector& p) {
  json arr = json::array();
  for (const Rational& r : p.vec()) {
    arr.push_back({integer_json(boost::multiprecision::numerator(r)), integer_json(boost::multiprecision::denominator(r))});
  }
  return {{"p", arr}};
}

RationalProbVector rational_prob_from_json(const json& j) {
  const json& arr = require(j, "p");
  if (!arr.is_array()) throw ValidationError("JSON: 'p' must be an array");
  std::vector<Rational> out;
  for (const json& e : arr) out.push_back(rational_from_json(e));
  return RationalProbVector(std::move(out));
}

json to_json(const KrausSet& k) {
  json ops = json::array();
  for (const auto& op : k.operators()) ops.push_back(to_json(op));
  return {{"kraus", ops}};
}

json to_json(const ChannelPipeline& p) {
  json stages = json::array();
  for (const auto& st : p.stages()) stages.push_back(to_json(st));
  json out = {{"da", p.da()}, {"db", p.db_in()}, {"stages", stages}};
  if (p.db_out() != p.db_in()) out["db_out"] = p.db_out();
  return out;
}

ChannelPipeline pipeline_from_json(const json& j) {
  const int da = require(j, "da").get<int>();
  int db = require(j, "db").get<int>();
  const int db_final = j.contains("db_out") ? j.at("db_out").get<int>() : db;
  const json& stages = require(j, "stages");
  if (!stages.is_array() || stages.empty()) throw ValidationError("JSON: 'stages' must be a non-empty array");
  std::vector<KrausSet> out;
  for (const json& st : stages) {
    std::vector<CMatrix> ops;
    for (const json& m : require(st, "kraus")) ops.push_back(matrix_from_json(m));
    if (ops.empty()) throw ValidationError("JSON: stage without Kraus operators");
    const auto rows = static_cast<int>(ops.front().rows());
    if (rows % da != 0) throw DimensionError("JSON: Kraus operator rows not divisible by da");
    const int db_out = rows / da;
    out.emplace_back(da, db, db_out, std::move(ops));
    db = db_out;
  }
  if (db != db_final) throw DimensionError("JSON: final stage does not produce db_out");
  return ChannelPipeline(std::move(out));
}

json to_json(const RoofConfig& cfg) {
  return {{"restarts", cfg.restarts},        {"ensemble_size", cfg.ensemble_size}, {"max_iters", cfg.max_iters},
          {"stall_window", cfg.stall_window}, {"initial_step", cfg.initial_step},   {"final_step", cfg.final_step},
          {"seed", cfg.seed},                {"threads", cfg.threads}};
}

RoofConfig roof_config_from_json(const json& j) {
  RoofConfig cfg;
  cfg.restarts = j.value("restarts", cfg.restarts);
  cfg.ensemble_size = j.value("ensemble_size", cfg.ensemble_size);
  cfg.max_iters = j.value("max_iters", cfg.max_iters);
  cfg.stall_window = j.value("stall_window", cfg.stall_window);
  cfg.initial_step = j.value("initial_step", cfg.initial_step);
  cfg.final_step = j.value("final_step", cfg.final_step);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.threads = j.value("threads", cfg.threads);
  return cfg;
}

json to_json(const Ensemble& e) {
  json states = json::array();
  for (const auto& s : e.states) states.push_back(to_json(s));
  return {{"weights", e.weights.vec()}, {"states", states}};
}

json to_json(const RoofResult& r) {
  return {{"value", r.value},
          {"converged", r.converged},
          {"evaluations", r.evaluations},
          {"ensemble", to_json(r.ensemble)}};
}

StateFile state_file_from_json(const json& j) {
  if (j.contains("amps")) return pure_from_json(j);
  if (j.contains("entries")) return density_from_json(j);
  if (j.contains("p")) return prob_from_json(j);
  throw ValidationError("JSON: not a state file (expected 'amps', 'entries' or 'p')");
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write '" + path.string() + "'");
  out << dump(j) << '\n';
}

std::string dump(const json& j) { return j.dump(); }

}  // namespace pcoh::io
