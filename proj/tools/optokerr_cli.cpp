#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "optokerr/error.hpp"
#include "optokerr/harness/config.hpp"
#include "optokerr/harness/presets.hpp"
#include "optokerr/harness/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitPhysics = 3;

void report_error(const std::string& kind, const std::string& message) {
  nlohmann::json j;
  j["error"] = {{"kind", kind}, {"message", message}};
  std::cerr << j.dump() << "\n";
}

int execute(const optokerr::harness::ExperimentConfig& config, const optokerr::harness::RunOptions& opts) {
  const auto result = optokerr::harness::run(config, opts);
  for (const auto& path : result.artifacts) std::cout << path << "\n";
  for (const auto& msg : result.messages) std::cerr << "warning: " << msg << "\n";
  if (result.all_failed()) {
    report_error("physics_error", "no parameter point produced a result (" + std::to_string(result.failed) +
                                      " failed); see the status column or sidecar");
    return kExitPhysics;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady state, noise spectra, cooling and entanglement of a Kerr + parametric optomechanical cavity"};
  app.require_subcommand(1);

  std::string out_dir;
  unsigned threads = 1;
  app.add_option("--out", out_dir, "Output directory (overrides the config)");
  app.add_option("--threads", threads, "Worker threads for sweeps")->check(CLI::PositiveNumber);

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment config");
  run_cmd->add_option("config", config_path, "JSON config file")->required();

  std::string preset_id;
  bool emit_config = false;
  auto* preset_cmd = app.add_subcommand("preset", "Run a figure preset or print its config");
  preset_cmd->add_option("id", preset_id, "fig2 ... fig10")->required();
  preset_cmd->add_flag("--emit-config", emit_config, "Print the preset config as JSON and exit");

  std::string axis_text;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a config along one parameter axis");
  sweep_cmd->add_option("config", config_path, "JSON config file")->required();
  sweep_cmd->add_option("--axis", axis_text, "name:min:max:n[:log]")->required();

  app.add_subcommand("presets", "List preset ids");

  for (auto* sub : {run_cmd, preset_cmd, sweep_cmd}) {
    sub->add_option("--out", out_dir, "Output directory (overrides the config)");
    sub->add_option("--threads", threads, "Worker threads for sweeps")->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    report_error("usage_error", e.what());
    return kExitConfig;
  }

  using optokerr::Error;
  using optokerr::ErrorKind;
  namespace h = optokerr::harness;
  const h::RunOptions opts{out_dir, threads};

  try {
    if (app.got_subcommand("presets")) {
      for (const auto& id : h::preset_ids()) std::cout << id << "\n";
      return kExitOk;
    }
    if (*run_cmd) return execute(h::load_config(config_path), opts);
    if (*preset_cmd) {
      const h::ExperimentConfig c = h::preset(preset_id);
      if (emit_config) {
        std::cout << h::config_to_json_text(c) << "\n";
        return kExitOk;
      }
      return execute(c, opts);
    }
    if (*sweep_cmd) {
      h::ExperimentConfig c = h::load_config(config_path);
      c.sweep = h::SweepAxis::parse(axis_text);
      c.validate();
      return execute(c, opts);
    }
  } catch (const Error& e) {
    report_error(std::string(optokerr::to_string(e.kind())), e.what());
    const bool input = e.kind() == ErrorKind::Config || e.kind() == ErrorKind::Io ||
                       e.kind() == ErrorKind::InvalidParameter;
    return input ? kExitConfig : kExitPhysics;
  } catch (const std::exception& e) {
    report_error("internal_error", e.what());
    return 1;
  }
  return kExitOk;
}
