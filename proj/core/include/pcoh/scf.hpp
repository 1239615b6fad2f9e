#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcoh/majorization.hpp"

namespace pcoh {

/// A named symmetric concave function on the probability simplex: it
/// vanishes on deterministic vectors, ignores permutations and is concave.
struct ScfDescriptor {
  std::string id;
  std::function<double(std::span<const double>)> eval;
};

/// Outcome of randomized checks of the three defining conditions.
struct ScfValidation {
  bool faithful = true;     // f(1, 0, ..., 0) == 0
  bool symmetric = true;    // invariant under permutations
  bool concave = true;      // midpoint concavity on random pairs
  bool non_negative = true;
  double worst_violation = 0.0;

  [[nodiscard]] bool ok() const noexcept { return faithful && symmetric && concave && non_negative; }
};

ScfValidation validate_scf(const ScfDescriptor& f, std::uint64_t seed, int trials = 256, double slack = 1e-10);

/// Set of registered functions. Starts with shannon, one_minus_max and
/// one_minus_purity; user functions are validated before insertion.
class ScfRegistry {
 public:
  ScfRegistry();

  /// Process-wide registry holding only the built-ins.
  static const ScfRegistry& builtin();

  [[nodiscard]] const ScfDescriptor& get(std::string_view id) const;
  [[nodiscard]] bool contains(std::string_view id) const;
  [[nodiscard]] std::vector<std::string> ids() const;
  [[nodiscard]] const std::vector<ScfDescriptor>& all() const noexcept { return functions_; }

  /// Throws ValidationError if `f` fails the randomized checks, LookupError
  /// on a duplicate id.
  void add(ScfDescriptor f, std::uint64_t seed = 0x5eed);

 private:
  std::vector<ScfDescriptor> functions_;
};

/// Built-in lookup by id.
const ScfDescriptor& scf(std::string_view id);

double shannon_entropy(std::span<const double> p);
double one_minus_max(std::span<const double> p);
double one_minus_purity(std::span<const double> p);

/// f(p), clamped at zero against rounding.
double eval_scf(const ScfDescriptor& f, const ProbVector& p);

}  // namespace pcoh
