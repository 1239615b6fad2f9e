#include "pcoh/scf.hpp"

#include <algorithm>
#include <cmath>

#include "pcoh/errors.hpp"
#include "pcoh/random.hpp"

namespace pcoh {

double shannon_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log(x);
  }
  return h;
}

double one_minus_max(std::span<const double> p) {
  return 1.0 - *std::max_element(p.begin(), p.end());
}

double one_minus_purity(std::span<const double> p) {
  double s = 0.0;
  for (double x : p) s += x * x;
  return 1.0 - s;
}

ScfValidation validate_scf(const ScfDescriptor& f, std::uint64_t seed, int trials, double slack) {
  ScfValidation out;
  if (!f.eval) {
    out.faithful = out.symmetric = out.concave = out.non_negative = false;
    return out;
  }
  Rng rng(seed);
  auto note = [&out](bool& flag, double violation) {
    if (violation > 0.0) {
      flag = false;
      out.worst_violation = std::max(out.worst_violation, violation);
    }
  };
  for (int d = 1; d <= 6; ++d) {
    const ProbVector e = ProbVector::basis(static_cast<std::size_t>(d), static_cast<std::size_t>(d - 1));
    note(out.faithful, std::abs(f.eval(e.values())) - slack);
  }
  for (int t = 0; t < trials; ++t) {
    const int d = 2 + rng.index(5);
    const ProbVector p = random_simplex(d, rng);
    const ProbVector q = random_simplex(d, rng);
    const double fp = f.eval(p.values());
    note(out.non_negative, -fp - slack);

    std::vector<double> perm = p.vec();
    std::shuffle(perm.begin(), perm.end(), rng.engine());
    note(out.symmetric, std::abs(f.eval(perm) - fp) - slack);

    const double r = rng.uniform();
    std::vector<double> m(p.size());
    for (std::size_t k = 0; k < m.size(); ++k) m[k] = r * p[k] + (1.0 - r) * q[k];
    note(out.concave, r * fp + (1.0 - r) * f.eval(q.values()) - f.eval(m) - slack);
  }
  return out;
}

ScfRegistry::ScfRegistry() {
  functions_.push_back({"shannon", shannon_entropy});
  functions_.push_back({"one_minus_max", one_minus_max});
  functions_.push_back({"one_minus_purity", one_minus_purity});
}

const ScfRegistry& ScfRegistry::builtin() {
  static const ScfRegistry registry;
  return registry;
}

const ScfDescriptor& ScfRegistry::get(std::string_view id) const {
  for (const auto& f : functions_) {
    if (f.id == id) return f;
  }
  throw LookupError("unknown function id '" + std::string(id) + "'");
}

bool ScfRegistry::contains(std::string_view id) const {
  return std::any_of(functions_.begin(), functions_.end(), [id](const auto& f) { return f.id == id; });
}

std::vector<std::string> ScfRegistry::ids() const {
  std::vector<std::string> out;
  for (const auto& f : functions_) out.push_back(f.id);
  return out;
}

void ScfRegistry::add(ScfDescriptor f, std::uint64_t seed) {
  if (f.id.empty()) throw ValidationError("ScfRegistry::add: empty id");
  if (contains(f.id)) throw LookupError("ScfRegistry::add: duplicate id '" + f.id + "'");
  const ScfValidation v = validate_scf(f, seed);
  if (!v.ok()) {
    throw ValidationError("ScfRegistry::add: '" + f.id + "' is not symmetric concave (worst violation " +
                          std::to_string(v.worst_violation) + ")");
  }
  functions_.push_back(std::move(f));
}

const ScfDescriptor& scf(std::string_view id) { return ScfRegistry::builtin().get(id); }

double eval_scf(const ScfDescriptor& f, const ProbVector& p) {
  if (!f.eval) throw LookupError("eval_scf: descriptor '" + f.id + "' has no function");
  return std::max(0.0, f.eval(p.values()));
}

}  // namespace pcoh
