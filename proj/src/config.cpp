#include "cdsim/config.hpp"

#include <cmath>
#include <fstream>

#include "cdsim/errors.hpp"
#include "cdsim/units.hpp"

namespace cdsim::harness {

namespace {

using nlohmann::json;

const json& require(const json& j, const std::string& field) {
  if (!j.contains(field)) throw config_error(field + ": missing");
  return j.at(field);
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) throw config_error(field + ": expected a number");
  return j.get<double>();
}

SystemKind parse_system(const std::string& s) {
  if (s == "two_level") return SystemKind::TwoLevel;
  if (s == "three_level") return SystemKind::ThreeLevel;
  if (s == "effective_two_level") return SystemKind::EffectiveTwoLevel;
  throw config_error("system: unknown kind '" + s + "'");
}

std::string system_name(SystemKind k) {
  switch (k) {
    case SystemKind::TwoLevel: return "two_level";
    case SystemKind::ThreeLevel: return "three_level";
    case SystemKind::EffectiveTwoLevel: return "effective_two_level";
  }
  return {};
}

CdKind parse_cd(const std::string& s) {
  if (s == "none") return CdKind::None;
  if (s == "rwa") return CdKind::Rwa;
  if (s == "beyond_rwa") return CdKind::BeyondRwa;
  if (s == "projector") return CdKind::ProjectorFormula;
  if (s == "closed_form") return CdKind::ClosedForm;
  if (s == "effective") return CdKind::EffectiveCD;
  throw config_error("cd: unknown variant '" + s + "'");
}

std::string cd_name(CdKind k) {
  switch (k) {
    case CdKind::None: return "none";
    case CdKind::Rwa: return "rwa";
    case CdKind::BeyondRwa: return "beyond_rwa";
    case CdKind::ProjectorFormula: return "projector";
    case CdKind::ClosedForm: return "closed_form";
    case CdKind::EffectiveCD: return "effective";
  }
  return {};
}

}  // namespace

int dim(SystemKind k) { return k == SystemKind::ThreeLevel ? 3 : 2; }

double parse_frequency(const json& j, const std::string& field) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_object() || !j.contains("value"))
    throw config_error(field + ": expected rad/s number or {value, unit}");
  const double v = number(j.at("value"), field + ".value");
  const std::string unit = j.value("unit", std::string("rad/s"));
  if (unit == "rad/s") return v;
  if (unit == "2pi*Hz") return units::two_pi_hz(v);
  if (unit == "2pi*kHz") return units::two_pi_khz(v);
  if (unit == "2pi*MHz") return units::two_pi_mhz(v);
  if (unit == "2pi*GHz") return units::two_pi_ghz(v);
  throw config_error(field + ".unit: unknown unit '" + unit + "'");
}

void validate(const SystemConfig& cfg) {
  const int d = dim(cfg.system);
  if (cfg.initial_level < 1 || cfg.initial_level > d)
    throw config_error("initialState: out of range for this system");
  if (cfg.target_level < 1 || cfg.target_level > d)
    throw config_error("targetState: out of range for this system");

  switch (cfg.system) {
    case SystemKind::TwoLevel:
      two_level::validate(cfg.two);
      if (cfg.cd != CdKind::None && cfg.cd != CdKind::Rwa && cfg.cd != CdKind::BeyondRwa)
        throw config_error("cd: '" + cd_name(cfg.cd) + "' incompatible with two_level");
      break;
    case SystemKind::ThreeLevel:
      three_level::validate(cfg.three);
      if (cfg.cd != CdKind::None && cfg.cd != CdKind::Rwa &&
          cfg.cd != CdKind::ProjectorFormula && cfg.cd != CdKind::ClosedForm)
        throw config_error("cd: '" + cd_name(cfg.cd) + "' incompatible with three_level");
      if (cfg.cd != CdKind::None) three_level::require_two_photon_resonance(cfg.three);
      break;
    case SystemKind::EffectiveTwoLevel:
      effective::validate({cfg.three, cfg.eff_variant});
      if (cfg.cd != CdKind::None && cfg.cd != CdKind::EffectiveCD)
        throw config_error("cd: '" + cd_name(cfg.cd) +
                           "' incompatible with effective_two_level");
      break;
  }
  if (cfg.imag_only && !(cfg.system == SystemKind::TwoLevel && cfg.cd == CdKind::Rwa))
    throw config_error("imagOnly: only applies to two_level with cd = rwa");
  if (cfg.integrator.carrier_resolution < 20)
    throw config_error("integrator.carrierResolution: must be >= 20");
}

void validate(const ScanSpec& spec) {
  for (const ScanAxis* a : {&spec.axis1, &spec.axis2}) {
    if (a->name != "omega0" && a->name != "gamma" && a->name != "delta")
      throw config_error("scan axis name: must be omega0, gamma, or delta");
    if (a->count < 2) throw config_error("scan axis count: must be >= 2");
    if (!(a->max >= a->min)) throw config_error("scan axis: max must be >= min");
  }
  validate(spec.base);
  if (spec.target < 1 || spec.target > dim(spec.base.system))
    throw config_error("scan target: out of range for the base system");
}

SystemConfig parse_config(const json& j) {
  SystemConfig cfg;
  cfg.system = parse_system(require(j, "system").get<std::string>());
  cfg.cd = parse_cd(j.value("cd", std::string("none")));
  cfg.imag_only = j.value("imagOnly", false);
  cfg.initial_level = j.value("initialState", 1);
  cfg.target_level = j.value("targetState", dim(cfg.system));

  const json& params = require(j, "params");
  const bool counter_rotating = j.value("counterRotating", false);

  if (cfg.system == SystemKind::TwoLevel) {
    cfg.two.gamma = parse_frequency(require(params, "gamma"), "params.gamma");
    cfg.two.omega_laser = parse_frequency(require(params, "omegaL"), "params.omegaL");
    cfg.two.counter_rotating = counter_rotating;
    const json& pulse = require(params, "pulse");
    cfg.two.ae.omega0 = parse_frequency(require(pulse, "omega0"), "pulse.omega0");
    cfg.two.ae.delta = parse_frequency(require(pulse, "delta"), "pulse.delta");
    cfg.two.ae.t0 = number(require(pulse, "t0"), "pulse.t0");
    cfg.two.ae.tf = number(require(pulse, "tf"), "pulse.tf");
  } else {
    cfg.three.gamma = parse_frequency(require(params, "gamma"), "params.gamma");
    cfg.three.delta_pump = parse_frequency(require(params, "deltaP"), "params.deltaP");
    cfg.three.delta_stokes = parse_frequency(require(params, "deltaS"), "params.deltaS");
    cfg.three.omega_pump = parse_frequency(require(params, "omegaP"), "params.omegaP");
    cfg.three.omega_stokes = parse_frequency(require(params, "omegaS"), "params.omegaS");
    cfg.three.counter_rotating = counter_rotating;
    const json& pulse = require(params, "pulse");
    cfg.three.pulses.omega0 = parse_frequency(require(pulse, "omega0"), "pulse.omega0");
    cfg.three.pulses.tau = number(require(pulse, "tau"), "pulse.tau");
    cfg.three.pulses.T = number(require(pulse, "T"), "pulse.T");
    cfg.three.pulses.tf = number(require(pulse, "tf"), "pulse.tf");
    if (cfg.system == SystemKind::EffectiveTwoLevel) {
      const std::string v = j.value("variant", std::string("standard"));
      if (v == "standard") cfg.eff_variant = effective::Variant::StandardElimination;
      else if (v == "as_printed") cfg.eff_variant = effective::Variant::AsPrinted;
      else throw config_error("variant: must be 'standard' or 'as_printed'");
    }
  }

  if (j.contains("integrator")) {
    const json& integ = j.at("integrator");
    const std::string method = integ.value("method", std::string("rk4"));
    if (method == "rk4") cfg.integrator.method = propagator::Method::RK4Fixed;
    else if (method == "rk4_adaptive")
      cfg.integrator.method = propagator::Method::RK4Adaptive;
    else throw config_error("integrator.method: must be 'rk4' or 'rk4_adaptive'");
    cfg.integrator.steps = integ.value("steps", 0LL);
    cfg.integrator.dt = integ.value("dt", 0.0);
    cfg.integrator.carrier_resolution = integ.value("carrierResolution", 20);
    cfg.integrator.store_every = integ.value("storeEvery", 0);
  }
  if (j.contains("output")) {
    cfg.outputs.trajectory = j.at("output").value("trajectory", std::string());
  }

  validate(cfg);
  return cfg;
}

ScanSpec parse_scan(const json& j) {
  ScanSpec spec;
  const json& scan = require(j, "scan");
  const auto parse_axis = [](const json& a, const std::string& field) {
    ScanAxis axis;
    axis.name = require(a, "name").get<std::string>();
    axis.min = parse_frequency(require(a, "min"), field + ".min");
    axis.max = parse_frequency(require(a, "max"), field + ".max");
    axis.count = require(a, "count").get<int>();
    return axis;
  };
  spec.axis1 = parse_axis(require(scan, "axis1"), "scan.axis1");
  spec.axis2 = parse_axis(require(scan, "axis2"), "scan.axis2");
  spec.base = parse_config(require(j, "base"));
  spec.target = scan.value("target", dim(spec.base.system));
  if (j.contains("output")) {
    spec.out_csv = j.at("output").value("scan", std::string());
    spec.warnings_log = j.at("output").value("warnings", std::string());
  }
  validate(spec);
  return spec;
}

json to_json(const SystemConfig& cfg) {
  json j;
  j["system"] = system_name(cfg.system);
  j["cd"] = cd_name(cfg.cd);
  j["imagOnly"] = cfg.imag_only;
  j["initialState"] = cfg.initial_level;
  j["targetState"] = cfg.target_level;

  json params;
  if (cfg.system == SystemKind::TwoLevel) {
    j["counterRotating"] = cfg.two.counter_rotating;
    params["gamma"] = cfg.two.gamma;
    params["omegaL"] = cfg.two.omega_laser;
    params["pulse"] = {{"omega0", cfg.two.ae.omega0},
                       {"delta", cfg.two.ae.delta},
                       {"t0", cfg.two.ae.t0},
                       {"tf", cfg.two.ae.tf}};
  } else {
    j["counterRotating"] = cfg.three.counter_rotating;
    params["gamma"] = cfg.three.gamma;
    params["deltaP"] = cfg.three.delta_pump;
    params["deltaS"] = cfg.three.delta_stokes;
    params["omegaP"] = cfg.three.omega_pump;
    params["omegaS"] = cfg.three.omega_stokes;
    params["pulse"] = {{"omega0", cfg.three.pulses.omega0},
                       {"tau", cfg.three.pulses.tau},
                       {"T", cfg.three.pulses.T},
                       {"tf", cfg.three.pulses.tf}};
    if (cfg.system == SystemKind::EffectiveTwoLevel)
      j["variant"] = cfg.eff_variant == effective::Variant::StandardElimination
                         ? "standard"
                         : "as_printed";
  }
  j["params"] = params;
  j["integrator"] = {
      {"method",
       cfg.integrator.method == propagator::Method::RK4Fixed ? "rk4" : "rk4_adaptive"},
      {"steps", cfg.integrator.steps},
      {"dt", cfg.integrator.dt},
      {"carrierResolution", cfg.integrator.carrier_resolution},
      {"storeEvery", cfg.integrator.store_every}};
  if (!cfg.outputs.trajectory.empty())
    j["output"] = {{"trajectory", cfg.outputs.trajectory}};
  return j;
}

json to_json(const ScanSpec& spec) {
  json j;
  const auto axis_json = [](const ScanAxis& a) {
    return json{{"name", a.name}, {"min", a.min}, {"max", a.max}, {"count", a.count}};
  };
  j["scan"] = {{"axis1", axis_json(spec.axis1)},
               {"axis2", axis_json(spec.axis2)},
               {"target", spec.target}};
  j["base"] = to_json(spec.base);
  json out;
  if (!spec.out_csv.empty()) out["scan"] = spec.out_csv;
  if (!spec.warnings_log.empty()) out["warnings"] = spec.warnings_log;
  if (!out.empty()) j["output"] = out;
  return j;
}

namespace {

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw config_error("config parse error in " + path + ": " + e.what());
  }
  return j;
}

}  // namespace

SystemConfig load_config_file(const std::string& path) {
  return parse_config(load_json_file(path));
}

ScanSpec load_scan_file(const std::string& path) {
  return parse_scan(load_json_file(path));
}

double omega_max(const SystemConfig& cfg) {
  switch (cfg.system) {
    case SystemKind::TwoLevel: {
      const auto& p = cfg.two;
      const double delta_max = 2.0 * p.ae.delta * p.ae.delta * p.ae.t0 / pi;
      const double omega_peak = (p.counter_rotating ? 2.0 : 1.0) * p.ae.omega0;
      return std::max({p.counter_rotating ? 2.0 * p.omega_laser : 0.0,
                       std::abs(delta_max), omega_peak, p.gamma});
    }
    case SystemKind::ThreeLevel: {
      const auto& p = cfg.three;
      const double omega_peak =
          std::sqrt(2.0) * (p.counter_rotating ? 2.0 : 1.0) * p.pulses.omega0;
      return std::max({p.counter_rotating ? 2.0 * p.omega_pump : 0.0,
                       p.counter_rotating ? 2.0 * p.omega_stokes : 0.0,
                       2.0 * std::abs(p.delta_pump), 2.0 * std::abs(p.delta_stokes),
                       omega_peak, p.gamma});
    }
    case SystemKind::EffectiveTwoLevel: {
      const auto& p = cfg.three;
      const double drive = (p.counter_rotating ? 2.0 : 1.0) * p.pulses.omega0;
      const double eff = 2.0 * drive * drive /
                         std::abs(2.0 * p.delta_pump - iu * p.gamma);
      return std::max({p.counter_rotating ? 2.0 * p.omega_pump : 0.0,
                       p.counter_rotating ? 2.0 * p.omega_stokes : 0.0, eff, p.gamma});
    }
  }
  return 0.0;
}

}  // namespace cdsim::harness
