#include "config_file.hpp"

#include <cstdlib>
#include <fstream>
#include <string_view>

#include "hwstaff/errors.hpp"

namespace hwstaff::cli {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_number(const std::string& key, const std::string& text, int line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw ConfigError("config line " + std::to_string(line) + ": invalid number for " + key +
                      ": '" + text + "'");
  }
  return v;
}

}  // namespace

numerics::QuadratureConfig parse_quadrature_config(std::istream& in,
                                                   numerics::QuadratureConfig base) {
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(std::string_view(raw).substr(0, hash));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(text).substr(0, eq));
    const std::string value = trim(std::string_view(text).substr(eq + 1));

    if (key == "rel_tol") {
      base.rel_tol = parse_number(key, value, line);
    } else if (key == "abs_tol") {
      base.abs_tol = parse_number(key, value, line);
    } else if (key == "max_refinements") {
      const double v = parse_number(key, value, line);
      if (v != static_cast<int>(v)) {
        throw ConfigError("config line " + std::to_string(line) + ": max_refinements must be an integer");
      }
      base.max_refinements = static_cast<int>(v);
    } else if (key == "truncation_log_cutoff") {
      base.truncation_log_cutoff = parse_number(key, value, line);
    } else {
      throw ConfigError("config line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
  }
  try {
    base.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return base;
}

numerics::QuadratureConfig load_quadrature_config(const std::string& path,
                                                  numerics::QuadratureConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  return parse_quadrature_config(in, base);
}

std::optional<std::string> resolve_config_path(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv(kConfigEnvVar); env != nullptr && *env != '\0') {
    return std::string(env);
  }
  return std::nullopt;
}

}  // namespace hwstaff::cli
