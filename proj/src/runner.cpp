#include "cdsim/runner.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <optional>

#include "cdsim/csv.hpp"
#include "cdsim/effective.hpp"
#include "cdsim/errors.hpp"
#include "cdsim/parallel.hpp"

namespace cdsim::harness {

namespace {

using propagator::Trajectory;

// Tracks the largest relative deviation between two CD evaluations.
struct DiscrepancyTracker {
  double max_rel = 0;

  void update(const Matrix3c& reference, const Matrix3c& other) {
    const double scale = std::max(reference.norm(), other.norm());
    if (scale < 1e-30) return;
    max_rel = std::max(max_rel, (reference - other).norm() / scale);
  }
};

std::function<Matrix2c(double)> make_two_level_builder(const SystemConfig& cfg) {
  const auto prev = std::make_shared<std::optional<two_level::MixingAngle>>();
  return [cfg, prev](double t) {
    Matrix2c h = two_level::hamiltonian(t, cfg.two);
    switch (cfg.cd) {
      case CdKind::None:
        break;
      case CdKind::Rwa: {
        const auto aux = two_level::cd_rwa(t, cfg.two);
        complexd wa =
            cfg.imag_only ? two_level::imag_only_approximation(aux.omega_a) : aux.omega_a;
        // An RWA-designed auxiliary field applied in the counter-rotating
        // regime carries its own 1 + e^{-2 i omega_L t} factor, like every
        // other laser coupling.
        if (cfg.two.counter_rotating)
          wa = pulses::dress_counter_rotating({wa, 0.0}, cfg.two.omega_laser, t).value;
        Matrix2c m;
        m << 0.0, wa, -wa, 0.0;
        h += m;
        break;
      }
      case CdKind::BeyondRwa: {
        const auto angle =
            two_level::mixing_angle(t, cfg.two, prev->has_value() ? &**prev : nullptr);
        *prev = angle;
        h += two_level::cd_beyond_rwa(angle, cfg.two.omega_laser, t);
        break;
      }
      default:
        throw config_error("cd: incompatible with two_level");
    }
    return h;
  };
}

std::function<Matrix3c(double)> make_three_level_builder(
    const SystemConfig& cfg, const std::shared_ptr<DiscrepancyTracker>& disc) {
  const auto prev = std::make_shared<std::optional<three_level::Eigensystem3>>();
  return [cfg, prev, disc](double t) {
    Matrix3c h = three_level::hamiltonian(t, cfg.three);
    switch (cfg.cd) {
      case CdKind::None:
        break;
      case CdKind::Rwa:
        h += three_level::cd_rwa(t, cfg.three);
        break;
      case CdKind::ProjectorFormula: {
        const auto es = three_level::eigensystem(t, cfg.three,
                                                 prev->has_value() ? &**prev : nullptr);
        *prev = es;
        const auto ps = three_level::projectors(es);
        const Matrix3c h0dot = three_level::hamiltonian_dot(t, cfg.three);
        const Matrix3c cd =
            three_level::cd_projector_formula(t, cfg.three, es, ps, h0dot);
        if (disc) disc->update(cd, three_level::cd_closed_form(t, cfg.three, es));
        h += cd;
        break;
      }
      case CdKind::ClosedForm: {
        const auto es = three_level::eigensystem(t, cfg.three,
                                                 prev->has_value() ? &**prev : nullptr);
        *prev = es;
        h += three_level::cd_closed_form(t, cfg.three, es);
        break;
      }
      default:
        throw config_error("cd: incompatible with three_level");
    }
    return h;
  };
}

std::function<Matrix2c(double)> make_effective_builder(const SystemConfig& cfg) {
  const effective::EffectiveParams p{cfg.three, cfg.eff_variant};
  return [cfg, p](double t) {
    Matrix2c h = effective::effective_hamiltonian(t, p);
    if (cfg.cd == CdKind::EffectiveCD) h += effective::effective_cd(t, p);
    return h;
  };
}

double total_time(const SystemConfig& cfg) {
  return cfg.system == SystemKind::TwoLevel ? cfg.two.ae.tf : cfg.three.pulses.tf;
}

}  // namespace

nlohmann::json RunSummary::to_json() const {
  nlohmann::json j;
  j["preset"] = preset;
  j["fidelity"] = fidelity;
  j["finalPopulations"] = final_populations;
  j["minNorm"] = min_norm;
  if (max_cd_discrepancy)
    j["maxCdDiscrepancy"] = *max_cd_discrepancy;
  else
    j["maxCdDiscrepancy"] = nullptr;
  for (const auto& [key, value] : extra.items()) j[key] = value;
  return j;
}

RunResult run_trajectory(const SystemConfig& cfg) {
  validate(cfg);
  const double tf = total_time(cfg);

  propagator::IntegratorSpec spec = cfg.integrator;
  if (spec.omega_max == 0) spec.omega_max = omega_max(cfg);

  RunResult out;
  std::shared_ptr<DiscrepancyTracker> disc;

  if (cfg.system == SystemKind::ThreeLevel) {
    Vector3c psi0 = Vector3c::Zero();
    psi0(cfg.initial_level - 1) = 1.0;
    if (cfg.cd == CdKind::ProjectorFormula) disc = std::make_shared<DiscrepancyTracker>();
    out.trajectory =
        propagator::evolve<3>(make_three_level_builder(cfg, disc), psi0, tf, spec);
  } else {
    Vector2c psi0 = Vector2c::Zero();
    psi0(cfg.initial_level - 1) = 1.0;
    const auto builder = cfg.system == SystemKind::TwoLevel
                             ? make_two_level_builder(cfg)
                             : make_effective_builder(cfg);
    out.trajectory = propagator::evolve<2>(builder, psi0, tf, spec);
  }

  out.summary.fidelity = propagator::fidelity(out.trajectory, cfg.target_level);
  const auto& last = out.trajectory.states.back();
  out.summary.final_populations.assign(last.size(), 0.0);
  for (int i = 0; i < last.size(); ++i)
    out.summary.final_populations[i] = std::norm(last(i));

  double min_norm = std::numeric_limits<double>::infinity();
  for (const auto& s : out.trajectory.states) min_norm = std::min(min_norm, s.norm());
  out.summary.min_norm = min_norm;
  if (disc) out.summary.max_cd_discrepancy = disc->max_rel;
  return out;
}

RunSummary run_config(const SystemConfig& cfg) {
  RunResult res = run_trajectory(cfg);
  if (!cfg.outputs.trajectory.empty()) {
    std::ofstream out(cfg.outputs.trajectory);
    if (!out) throw config_error("cannot open output file: " + cfg.outputs.trajectory);
    write_trajectory_csv(out, res.trajectory);
  }
  return res.summary;
}

namespace {

void apply_axis(SystemConfig& cfg, const std::string& name, double value) {
  if (cfg.system == SystemKind::TwoLevel) {
    if (name == "omega0") cfg.two.ae.omega0 = value;
    else if (name == "gamma") cfg.two.gamma = value;
    else cfg.two.ae.delta = value;
  } else {
    if (name == "omega0") cfg.three.pulses.omega0 = value;
    else if (name == "gamma") cfg.three.gamma = value;
    else {
      cfg.three.delta_pump = value;
      cfg.three.delta_stokes = value;  // scans stay on two-photon resonance
    }
  }
}

std::vector<double> axis_values(const ScanAxis& a) {
  std::vector<double> v(a.count);
  for (int i = 0; i < a.count; ++i)
    v[i] = a.count == 1 ? a.min
                        : a.min + (a.max - a.min) * static_cast<double>(i) /
                                      static_cast<double>(a.count - 1);
  return v;
}

}  // namespace

ScanResult run_scan(const ScanSpec& spec, int threads) {
  validate(spec);
  ScanResult res;
  res.axis1 = axis_values(spec.axis1);
  res.axis2 = axis_values(spec.axis2);
  const std::size_t n1 = res.axis1.size(), n2 = res.axis2.size();
  res.fidelity.assign(n1 * n2, std::numeric_limits<double>::quiet_NaN());
  std::vector<std::string> warnings(n1 * n2);

  parallel_for(n1 * n2, threads, [&](std::size_t cell) {
    const std::size_t i = cell / n2, k = cell % n2;
    SystemConfig cfg = spec.base;
    cfg.outputs.trajectory.clear();
    cfg.target_level = spec.target;
    apply_axis(cfg, spec.axis1.name, res.axis1[i]);
    apply_axis(cfg, spec.axis2.name, res.axis2[k]);
    cfg.integrator.omega_max = 0;  // recompute for the cell's parameters
    try {
      res.fidelity[cell] = run_trajectory(cfg).summary.fidelity;
    } catch (const std::exception& e) {
      warnings[cell] = "cell (" + fmt17(res.axis1[i]) + ", " + fmt17(res.axis2[k]) +
                       "): " + e.what();
    }
  });

  for (auto& w : warnings)
    if (!w.empty()) res.warnings.push_back(std::move(w));
  return res;
}

RunSummary run_scan_to_files(const ScanSpec& spec, int threads) {
  const ScanResult res = run_scan(spec, threads);

  if (!spec.out_csv.empty()) {
    std::ofstream out(spec.out_csv);
    if (!out) throw config_error("cannot open output file: " + spec.out_csv);
    out << "axis1,axis2,fidelity\n";
    for (std::size_t i = 0; i < res.axis1.size(); ++i)
      for (std::size_t k = 0; k < res.axis2.size(); ++k)
        out << fmt17(res.axis1[i]) << ',' << fmt17(res.axis2[k]) << ','
            << fmt17(res.fidelity[i * res.axis2.size() + k]) << "\n";
  }
  if (!res.warnings.empty() && !spec.warnings_log.empty()) {
    std::ofstream log(spec.warnings_log);
    for (const auto& w : res.warnings) log << w << "\n";
  }

  double fmin = std::numeric_limits<double>::infinity(), fmax = 0;
  std::size_t nan_cells = 0;
  for (double f : res.fidelity) {
    if (std::isnan(f)) {
      ++nan_cells;
      continue;
    }
    fmin = std::min(fmin, f);
    fmax = std::max(fmax, f);
  }

  RunSummary summary;
  summary.fidelity = fmin;
  summary.min_norm = std::numeric_limits<double>::quiet_NaN();
  summary.extra = {{"minFidelity", fmin},
                   {"maxFidelity", fmax},
                   {"cells", res.fidelity.size()},
                   {"nanCells", nan_cells}};
  return summary;
}

}  // namespace cdsim::harness
