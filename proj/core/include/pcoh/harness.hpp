#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pcoh/convex_roof.hpp"
#include "pcoh/tolerance.hpp"

namespace pcoh::harness {

using json = nlohmann::json;

struct SuiteConfig {
  std::string suite;
  int n = 100;
  std::vector<std::pair<int, int>> dims;  // empty selects the suite default
  std::uint64_t seed = 0;
  Tolerance tolerance;                 // passed to library calls
  std::optional<double> check_slack;  // replaces every per-check tolerance
  int samples = -1;  // per-trial sample budget; -1 selects the suite default
  int werner = -1;   // roof_oracle only: Werner states appended (-1: n / 5)
  RoofConfig roof;   // budget for suites that need the convex roof
  int threads = 1;
};

/// Outcome of a suite. Slack is always "claimed bound minus observed", so a
/// negative slack means the claim was exceeded; a trial is a violation when
/// some check's slack falls below minus that check's tolerance.
struct Report {
  std::string suite;
  int trials = 0;
  int violations = 0;
  double max_violation = 0.0;  // max over checks of -slack
  double tolerance = 0.0;      // largest per-check tolerance of the suite
  json worst_case;             // inputs and check of the worst trial
  std::uint64_t seed = 0;
  double wall_time = 0.0;      // seconds
  json details;                // suite-specific counters
};

/// Registered suite ids.
std::vector<std::string> suite_ids();

/// Default (da, db) list of a suite.
std::vector<std::pair<int, int>> default_dims(std::string_view suite);

/// Parse "3x2,4x4".
std::vector<std::pair<int, int>> parse_dims(std::string_view text);

/// Deterministic given cfg. Throws LookupError on an unknown suite and
/// DimensionError when a party dimension lies outside [2, 8].
Report run_suite(const SuiteConfig& cfg);

/// Canonical JSON (sorted keys, round-trip reals). wall_time is emitted only
/// when `include_timing` is set, which keeps repeated runs bit-identical.
json report_to_json(const Report& r, bool include_timing = false);
Report report_from_json(const json& j);
std::string encode_report(const Report& r, bool include_timing = false);
Report decode_report(std::string_view text);

/// 0 when the report has no violations, 3 otherwise.
int exit_code(const Report& r) noexcept;

}  // namespace pcoh::harness
