#include <doctest.h>

#include <cmath>

#include "pcoh/errors.hpp"
#include "pcoh/random.hpp"
#include "pcoh/scf.hpp"
#include "support.hpp"

using namespace pcoh;

// Reference values from an independent evaluation of -sum p ln p.
constexpr double kH_05_026_024 = 1.039320664104926;
constexpr double kH_08_02 = 0.5004024235381879;

TEST_CASE("shannon examples") {
  const ScfDescriptor& h = scf("shannon");
  CHECK(eval_scf(h, ProbVector({1.0, 0.0, 0.0})) == 0.0);
  CHECK(eval_scf(h, ProbVector({0.5, 0.5})) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(eval_scf(h, ProbVector({0.5, 0.26, 0.24})) == doctest::Approx(kH_05_026_024).epsilon(1e-14));
  CHECK(eval_scf(h, ProbVector({0.8, 0.2})) == doctest::Approx(kH_08_02).epsilon(1e-14));
}

TEST_CASE("other built-ins") {
  CHECK(eval_scf(scf("one_minus_max"), ProbVector({0.5, 0.26, 0.24})) == doctest::Approx(0.5));
  CHECK(eval_scf(scf("one_minus_purity"), ProbVector({0.5, 0.26, 0.24})) == doctest::Approx(0.6248));
  CHECK(eval_scf(scf("one_minus_max"), ProbVector({0.0, 1.0})) == 0.0);
  CHECK(eval_scf(scf("one_minus_purity"), ProbVector({0.0, 1.0})) == 0.0);
}

TEST_CASE("registry lookup") {
  CHECK(ScfRegistry::builtin().ids() == std::vector<std::string>{"shannon", "one_minus_max", "one_minus_purity"});
  CHECK_THROWS_AS(scf("renyi"), LookupError);
  CHECK(ScfRegistry::builtin().contains("shannon"));
}

TEST_CASE("every built-in passes randomized validation") {
  for (const auto& f : ScfRegistry::builtin().all()) {
    const ScfValidation v = validate_scf(f, 17, 512);
    CHECK_MESSAGE(v.ok(), f.id);
  }
}

TEST_CASE("user functions are validated before registration") {
  ScfRegistry reg;
  // 1 - p_max^2 is symmetric, concave and faithful.
  reg.add({"one_minus_max_sq", [](std::span<const double> p) {
             double m = 0.0;
             for (double x : p) m = std::max(m, x);
             return 1.0 - m * m;
           }});
  CHECK(reg.contains("one_minus_max_sq"));

  // Convex, not concave.
  CHECK_THROWS_AS(reg.add({"purity", [](std::span<const double> p) {
                             double s = 0.0;
                             for (double x : p) s += x * x;
                             return s;
                           }}),
                  ValidationError);
  // Not symmetric.
  CHECK_THROWS_AS(reg.add({"first", [](std::span<const double> p) { return 1.0 - p[0]; }}), ValidationError);
  // Duplicate id.
  CHECK_THROWS_AS(reg.add({"shannon", shannon_entropy}), LookupError);
}

TEST_CASE("property: Schur concavity of the built-ins") {
  Rng rng(55);
  for (int k = 0; k < 1000; ++k) {
    const int d = 2 + rng.index(7);
    const std::vector<double> q = random_simplex(d, rng).vec();
    const ProbVector p(test::majorized_below(q, rng));
    for (const auto& f : ScfRegistry::builtin().all()) {
      CHECK(eval_scf(f, p) >= eval_scf(f, ProbVector(q)) - 1e-10);
    }
  }
}
