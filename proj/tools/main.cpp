#include <exception>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "cdsim/config.hpp"
#include "cdsim/errors.hpp"
#include "cdsim/presets.hpp"
#include "cdsim/runner.hpp"

namespace {

int default_threads() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

void print_summary(const cdsim::harness::RunSummary& s) {
  std::cout << s.to_json().dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counterdiabatic driving simulator for decaying two- and "
               "three-level systems"};
  app.require_subcommand(1);
  app.fallthrough();  // --threads/--dt may follow the subcommand

  int threads = default_threads();
  double dt_override = 0;
  app.add_option("--threads", threads, "Worker pool size (default: logical CPUs)");
  app.add_option("--dt", dt_override, "Integration step override [s]");

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "Propagate a single configuration");
  run_cmd->add_option("--config", config_path, "JSON configuration file")->required();

  std::string scan_path;
  auto* scan_cmd = app.add_subcommand("scan", "Evaluate a 2-D fidelity scan");
  scan_cmd->add_option("--config", scan_path, "JSON scan file")->required();

  std::string preset_id, out_dir = ".";
  auto* preset_cmd = app.add_subcommand("preset", "Reproduce one figure preset");
  preset_cmd->add_option("id", preset_id, "Preset id (fig1, fig2a, ... fig5b)")
      ->required();
  preset_cmd->add_option("--out", out_dir, "Output directory (default: .)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      auto cfg = cdsim::harness::load_config_file(config_path);
      if (dt_override > 0) {
        cfg.integrator.steps = 0;
        cfg.integrator.dt = dt_override;
      }
      print_summary(cdsim::harness::run_config(cfg));
    } else if (*scan_cmd) {
      auto spec = cdsim::harness::load_scan_file(scan_path);
      if (dt_override > 0) {
        spec.base.integrator.steps = 0;
        spec.base.integrator.dt = dt_override;
      }
      print_summary(cdsim::harness::run_scan_to_files(spec, threads));
    } else if (*preset_cmd) {
      print_summary(cdsim::harness::run_preset(preset_id, out_dir, threads, dt_override));
    }
  } catch (const cdsim::config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const cdsim::numeric_error& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
