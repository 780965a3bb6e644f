#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cdsim/config.hpp"
#include "cdsim/propagator.hpp"

namespace cdsim::harness {

struct RunSummary {
  std::string preset;  // empty for ad-hoc configs
  double fidelity = 0;
  std::vector<double> final_populations;
  double min_norm = 0;
  std::optional<double> max_cd_discrepancy;  // projector vs closed form
  nlohmann::json extra;                      // preset-specific fields

  nlohmann::json to_json() const;
};

struct RunResult {
  propagator::Trajectory trajectory;
  RunSummary summary;
};

// Propagates the configured reference + CD Hamiltonian. Projector-formula
// runs also evaluate the printed closed form along the way and record the
// largest relative discrepancy.
RunResult run_trajectory(const SystemConfig& cfg);

// run_trajectory plus the trajectory CSV (when a path is configured).
RunSummary run_config(const SystemConfig& cfg);

struct ScanResult {
  std::vector<double> axis1, axis2;  // grid values
  std::vector<double> fidelity;      // row-major, axis1 outer
  std::vector<std::string> warnings; // per-cell failures (cells become NaN)
};

ScanResult run_scan(const ScanSpec& spec, int threads);

// run_scan plus CSV and (when failures happened) the sidecar warning log.
RunSummary run_scan_to_files(const ScanSpec& spec, int threads);

}  // namespace cdsim::harness
