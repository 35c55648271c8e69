#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace wavelab {

/// Parsed scenario configuration. Unknown keys anywhere in the config are
/// rejected; the seed is recorded in every output file header.
struct Scenario {
  std::string name;
  std::string command;  // analyze | simulate | index | algebra | geometry
  std::string parameters_json;
  std::uint64_t seed = 0;
  std::filesystem::path output_dir;
};

class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parse and validate a config document (strict schema).
Scenario parse_scenario(const std::string& json_text);

/// Built-in scenario presets.
std::vector<std::string> preset_names();
std::string preset_config(const std::string& name);

struct RunResult {
  int exit_code = 0;  // 0 ok, 2 when measured values disagree with reference values
  std::vector<std::string> discrepancies;
  std::vector<std::filesystem::path> artifacts;
};

/// Execute a scenario; writes outputs atomically under the output directory.
RunResult run_scenario(const Scenario& scenario);

}  // namespace wavelab
