#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include <json.hpp>

#include "pcoh/convex_roof.hpp"
#include "pcoh/majorization.hpp"
#include "pcoh/majorization_exact.hpp"
#include "pcoh/pio.hpp"
#include "pcoh/states.hpp"

namespace pcoh::io {

using json = nlohmann::json;

// Complex numbers are [re, im]; matrices are arrays of rows.
json to_json(const CVector& v);
json to_json(const CMatrix& m);
CVector vector_from_json(const json& j);
CMatrix matrix_from_json(const json& j);

// {"da": int, "db": int, "amps": [[re, im], ...]}
json to_json(const PureState& s);
PureState pure_from_json(const json& j);

// {"da": int, "db": int, "entries": [[[re, im], ...], ...]} or {"d": int, ...}
json to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const json& j);

// {"p": [real, ...]}
json to_json(const ProbVector& p);
ProbVector prob_from_json(const json& j);

// {"p": [[num, den], ...]}; num/den may be integers or decimal strings.
json to_json(const RationalProbVector& p);
RationalProbVector rational_prob_from_json(const json& j);

// {"da", "db", "stages": [{"kraus": [matrix, ...]}, ...]}; "db_out" appears
// only when the channel changes the b dimension.
json to_json(const ChannelPipeline& p);
json to_json(const KrausSet& k);
ChannelPipeline pipeline_from_json(const json& j);

json to_json(const RoofConfig& cfg);
RoofConfig roof_config_from_json(const json& j);
json to_json(const Ensemble& e);
json to_json(const RoofResult& r);

/// Any state file: pure ("amps"), density ("entries") or probability vector ("p").
using StateFile = std::variant<PureState, DensityMatrix, ProbVector>;
StateFile state_file_from_json(const json& j);

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

/// Compact serialization. Reals use the shortest representation that
/// round-trips (at most 17 significant digits).
std::string dump(const json& j);

}  // namespace pcoh::io
