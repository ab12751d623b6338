#pragma once

#include <filesystem>
#include <string>

#include "glider/aerodynamics.hpp"
#include "glider/baseline.hpp"
#include "glider/environment.hpp"

namespace glider {

// Everything a scenario document describes: the environment plus the gains
// of the classic controller flown against it.
struct Scenario {
  ScenarioConfig env;
  ClassicControllerConfig controller;
  std::filesystem::path source;
};

/// Glider geometry document. Throws ConfigError naming the offending key;
/// syntax errors carry the parser's line/column.
GliderModel load_glider(const std::filesystem::path& path);
GliderModel parse_glider(const std::string& text);

/// Scenario document. A string "glider" entry is resolved relative to the
/// scenario file's directory; an object is parsed inline.
Scenario load_scenario(const std::filesystem::path& path);
Scenario parse_scenario(const std::string& text, const std::filesystem::path& base_dir);

/// Ready-to-reset environment for a scenario file.
Environment make_environment(const std::filesystem::path& scenario_path);

}  // namespace glider
