#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "wavelab/io.hpp"
#include "wavelab/scenario.hpp"
#include "wavelab/state.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw wavelab::config_error("cannot open config file: " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

int emit_error(const std::string& kind, const std::string& what) {
  nlohmann::json err;
  err["error"] = {{"kind", kind}, {"what", what}};
  std::cerr << err.dump() << std::endl;
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wavelab: characteristic-field calculus, wave-superposition "
               "classification, and reduced Euler solvers"};
  app.require_subcommand(0, 1);

  std::string config_path, preset, out_dir, format;
  std::uint64_t seed = 0;
  bool seed_set = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "scenario config JSON");
    cmd->add_option("--preset", preset, "built-in scenario preset name");
    cmd->add_option("--out", out_dir, "output directory override");
    cmd->add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t s) { seed = s; seed_set = true; }, "seed override");
    cmd->add_option("--format", format, "restrict artifacts: csv|json|svg");
  };

  std::vector<CLI::App*> cmds;
  for (const char* name : {"analyze", "simulate", "index", "algebra", "geometry"}) {
    CLI::App* c = app.add_subcommand(name, std::string("run a ") + name + " scenario");
    add_common(c);
    cmds.push_back(c);
  }
  CLI::App* presets_cmd = app.add_subcommand("presets", "list built-in scenario presets");

  CLI11_PARSE(app, argc, argv);

  if (presets_cmd->parsed()) {
    for (const auto& n : wavelab::preset_names()) std::cout << n << "\n";
    return 0;
  }
  if (app.get_subcommands().empty()) {
    std::cout << app.help();
    return 0;
  }

  try {
    const std::string command = app.get_subcommands().front()->get_name();
    std::string text;
    if (!preset.empty())
      text = wavelab::preset_config(preset);
    else if (!config_path.empty())
      text = slurp(config_path);
    else
      throw wavelab::config_error("either --config or --preset is required");

    wavelab::Scenario sc = wavelab::parse_scenario(text);
    if (sc.command != command)
      throw wavelab::config_error("config command \"" + sc.command +
                                  "\" does not match subcommand \"" + command + "\"");
    if (!out_dir.empty()) sc.output_dir = out_dir;
    if (seed_set) sc.seed = seed;

    wavelab::RunResult res = wavelab::run_scenario(sc);

    nlohmann::json summary;
    summary["name"] = sc.name;
    summary["exit_code"] = res.exit_code;
    summary["discrepancies"] = res.discrepancies;
    nlohmann::json arts = nlohmann::json::array();
    for (const auto& a : res.artifacts) {
      if (!format.empty() && a.extension() != "." + format) continue;
      arts.push_back(a.string());
    }
    summary["artifacts"] = arts;
    std::cout << summary.dump(2) << std::endl;
    return res.exit_code;
  } catch (const wavelab::config_error& e) {
    return emit_error("config", e.what());
  } catch (const wavelab::solver_halt& e) {
    return emit_error("solver-halt", e.what());
  } catch (const wavelab::invalid_state& e) {
    return emit_error("invalid-state", e.what());
  } catch (const std::exception& e) {
    return emit_error("error", e.what());
  }
}
