#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "depol/scenario.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw depol::ConfigError("cannot read config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string default_out_dir() {
  const char* env = std::getenv("DEPOL_OUT_DIR");
  return env && *env ? env : ".";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"depolarization dynamics of quantized light fields"};
  app.require_subcommand(1);

  std::string config_path;
  depol::RunOptions options;
  options.out_dir = default_out_dir();
  std::uint64_t seed = 0;
  bool seed_given = false;

  CLI::App* run = app.add_subcommand("run", "run a scenario config");
  run->add_option("config", config_path, "JSON scenario config")->required();
  run->add_option("--out", options.out_dir, "output directory");
  run->add_option("--seed", seed, "override the config seed")
      ->each([&](const std::string&) { seed_given = true; });
  run->add_option("--threads", options.n_threads,
                  "worker threads for ensemble runs (0 = default)");

  CLI::App* validate = app.add_subcommand("validate", "parse a config only");
  validate->add_option("config", config_path, "JSON scenario config")->required();

  CLI::App* presets = app.add_subcommand("presets", "list named initial states");

  CLI11_PARSE(app, argc, argv);

  try {
    if (presets->parsed()) {
      for (const depol::PresetInfo& p : depol::preset_list()) {
        std::printf("%-12s m=%s  %s\n", p.name.c_str(),
                    p.required_modes ? std::to_string(p.required_modes).c_str()
                                     : "*",
                    p.description.c_str());
      }
      return 0;
    }

    depol::ScenarioConfig config = depol::parse_config_text(read_file(config_path));
    if (validate->parsed()) {
      std::printf("ok\n");
      return 0;
    }
    if (seed_given) options.seed_override = seed;
    return depol::run_scenario(config, options);
  } catch (const depol::ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
