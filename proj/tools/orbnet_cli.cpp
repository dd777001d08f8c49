// Command-line front end. Talks to the simulator only through the C API.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "orbnet/orbnet.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct RuntimeFailure {
  std::string message;
};

void check(orbnet_status status, const char* what) {
  if (status != ORBNET_OK)
    throw RuntimeFailure{std::string(what) + ": " + orbnet_status_name(status) + ": " +
                         orbnet_last_error()};
}

using ConfigPtr = std::unique_ptr<orbnet_config, decltype(&orbnet_config_free)>;
using ResultsPtr = std::unique_ptr<orbnet_results, decltype(&orbnet_results_free)>;

ConfigPtr load(const std::string& path, std::optional<std::uint64_t> seed) {
  orbnet_config* raw = nullptr;
  check(orbnet_config_load(path.c_str(), &raw), "loading config");
  ConfigPtr cfg(raw, orbnet_config_free);
  if (const char* env = std::getenv("SIM_SEED"); env && *env && !seed) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw RuntimeFailure{"SIM_SEED is not an unsigned integer: " + std::string(env)};
    check(orbnet_config_set_seed(cfg.get(), v), "applying SIM_SEED");
  }
  if (seed) check(orbnet_config_set_seed(cfg.get(), *seed), "applying --seed");
  return cfg;
}

void emit(const orbnet_config* cfg, const std::string& out, const std::string& format) {
  orbnet_results* raw = nullptr;
  check(orbnet_run(cfg, &raw), "running scenario");
  ResultsPtr results(raw, orbnet_results_free);
  const orbnet_format fmt = format == "json" ? ORBNET_FORMAT_JSON : ORBNET_FORMAT_CSV;
  if (!out.empty()) {
    check(orbnet_results_write(results.get(), fmt, out.c_str()), "writing results");
    return;
  }
  char* text = nullptr;
  check(orbnet_results_to_text(results.get(), fmt, &text), "formatting results");
  std::fputs(text, stdout);
  orbnet_string_free(text);
}

std::filesystem::path figures_script() {
  if (const char* env = std::getenv("ORBNET_FIGURES_SCRIPT"); env && *env) return env;
  return std::filesystem::path(ORBNET_SOURCE_DIR) / "figures" / "render.py";
}

std::string quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orbnet: multi-orbit satellite constellation network simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  std::optional<std::uint64_t> seed;

  auto* run = app.add_subcommand("run", "Run a scenario (and its sweep, if configured)");
  run->add_option("--config", config_path, "Scenario configuration file")->required();
  run->add_option("--seed", seed, "Override the scenario seed");
  run->add_option("--out", out_path, "Output file (default: stdout)");
  run->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  std::string param;
  std::string values;
  auto* sweep = app.add_subcommand("sweep", "Sweep one parameter of a scenario");
  sweep->add_option("--config", config_path, "Scenario configuration file")->required();
  sweep->add_option("--param", param, "n_ues, active_fraction, altitude or policy")->required();
  sweep->add_option("--values", values, "Comma-separated values")->required();
  sweep->add_option("--seed", seed, "Override the scenario seed");
  sweep->add_option("--out", out_path, "Output file (default: stdout)");
  sweep->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  std::string preset_name;
  bool print = false;
  auto* preset = app.add_subcommand("preset", "Show a bundled constellation preset");
  preset->add_option("--name", preset_name, "Preset name")
      ->required()
      ->check(CLI::IsMember({"starlink", "iris2"}));
  preset->add_flag("--print", print, "Print the full preset configuration");

  std::string results_path;
  std::string figures_dir;
  auto* figures = app.add_subcommand("figures", "Render result figures from a results CSV");
  figures->add_option("--results", results_path, "Results CSV")->required();
  figures->add_option("--out", figures_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*run) {
      const ConfigPtr cfg = load(config_path, seed);
      emit(cfg.get(), out_path, format);
    } else if (*sweep) {
      const ConfigPtr cfg = load(config_path, seed);
      check(orbnet_config_set_sweep(cfg.get(), param.c_str(), values.c_str()), "configuring sweep");
      emit(cfg.get(), out_path, format);
    } else if (*preset) {
      orbnet_config* raw = nullptr;
      check(orbnet_config_from_preset(preset_name.c_str(), &raw), "loading preset");
      const ConfigPtr cfg(raw, orbnet_config_free);
      char* text = nullptr;
      check(orbnet_config_to_text(cfg.get(), &text), "formatting preset");
      if (print) std::fputs(text, stdout);
      else std::cout << "preset '" << preset_name << "' (use --print for the full configuration)\n";
      orbnet_string_free(text);
    } else if (*figures) {
      const std::filesystem::path script = figures_script();
      const std::string command = "python3 " + quote(script.string()) + " --results " +
                                  quote(results_path) + " --out " + quote(figures_dir);
      if (!std::filesystem::exists(script)) {
        std::cout << "figures component not installed; would run:\n  " << command << '\n';
        return kExitOk;
      }
      const int rc = std::system(command.c_str());
      return rc == 0 ? kExitOk : kExitRuntime;
    }
  } catch (const RuntimeFailure& e) {
    std::cerr << "error: " << e.message << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}
