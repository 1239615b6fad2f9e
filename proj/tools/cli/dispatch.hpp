#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace pcoh::cli {

enum ExitCode : int { kOk = 0, kDomainError = 1, kUsageError = 2, kViolations = 3 };

/// Run one invocation. `args` excludes the program name. Exactly one JSON
/// document goes to `out` on success; diagnostics go to `err`.
/// `env_seed` stands in for PCOH_SEED.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
             const std::optional<std::string>& env_seed = std::nullopt);

}  // namespace pcoh::cli
