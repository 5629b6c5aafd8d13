#pragma once

#include <istream>
#include <optional>
#include <string>

#include "hwstaff/numerics.hpp"

namespace hwstaff::cli {

/// Environment variable consulted when --config is not given.
inline constexpr const char* kConfigEnvVar = "HW_STAFFING_CONFIG";

/// Reads `key = value` lines onto base. Recognised keys: rel_tol, abs_tol,
/// max_refinements, truncation_log_cutoff. `#` starts a comment. Unknown
/// keys and malformed values throw ConfigError.
numerics::QuadratureConfig parse_quadrature_config(std::istream& in,
                                                   numerics::QuadratureConfig base = {});

numerics::QuadratureConfig load_quadrature_config(const std::string& path,
                                                  numerics::QuadratureConfig base = {});

/// --config if given, else $HW_STAFFING_CONFIG if set and non-empty.
std::optional<std::string> resolve_config_path(const std::string& flag_value);

}  // namespace hwstaff::cli
