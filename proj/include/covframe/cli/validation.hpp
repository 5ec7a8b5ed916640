#pragma once

#include "covframe/cli/commands.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace covframe::cli {

enum class ValidationLevel { fast, full };

ValidationLevel parse_level(const std::string& text);

/// Runs every invariant suite at the given level and prints a timing
/// table. Each failing suite is reported by name. Returns kOk or
/// kValidationFailed.
int cmd_validate(ValidationLevel level, const std::optional<std::filesystem::path>& input,
                 const RunConfig& cfg, std::ostream& report);

}  // namespace covframe::cli
