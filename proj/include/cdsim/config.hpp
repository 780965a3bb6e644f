#pragma once

#include <string>

#include <json.hpp>

#include "cdsim/effective.hpp"
#include "cdsim/propagator.hpp"
#include "cdsim/three_level.hpp"
#include "cdsim/two_level.hpp"

namespace cdsim::harness {

enum class SystemKind { TwoLevel, ThreeLevel, EffectiveTwoLevel };

enum class CdKind { None, Rwa, BeyondRwa, ProjectorFormula, ClosedForm, EffectiveCD };

struct OutputSpec {
  std::string trajectory;  // trajectory CSV path ("" = no file)
};

struct SystemConfig {
  SystemKind system = SystemKind::TwoLevel;
  CdKind cd = CdKind::None;
  bool imag_only = false;  // drive with i*Im(Omega_a) instead of Omega_a
  two_level::TwoLevelParams two;
  three_level::ThreeLevelParams three;  // also the effective-model base
  effective::Variant eff_variant = effective::Variant::StandardElimination;
  propagator::IntegratorSpec integrator;
  int initial_level = 1;  // 1-based
  int target_level = 2;   // 1-based, for the summary fidelity
  OutputSpec outputs;
};

struct ScanAxis {
  std::string name;  // one of omega0, gamma, delta
  double min = 0, max = 0;
  int count = 0;
};

struct ScanSpec {
  ScanAxis axis1, axis2;
  SystemConfig base;
  int target = 3;
  std::string out_csv;
  std::string warnings_log;
};

int dim(SystemKind k);

void validate(const SystemConfig& cfg);
void validate(const ScanSpec& spec);

SystemConfig parse_config(const nlohmann::json& j);
ScanSpec parse_scan(const nlohmann::json& j);

nlohmann::json to_json(const SystemConfig& cfg);
nlohmann::json to_json(const ScanSpec& spec);

SystemConfig load_config_file(const std::string& path);
ScanSpec load_scan_file(const std::string& path);

// Frequency fields accept a raw rad/s number or {"value": v, "unit": u} with
// u in {rad/s, 2pi*Hz, 2pi*kHz, 2pi*MHz, 2pi*GHz}.
double parse_frequency(const nlohmann::json& j, const std::string& field);

// Fastest angular frequency of the configured Hamiltonian, for the carrier
// bound dt <= 2 pi / (carrierResolution * omega_max).
double omega_max(const SystemConfig& cfg);

}  // namespace cdsim::harness
