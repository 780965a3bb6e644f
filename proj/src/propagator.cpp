#include "cdsim/propagator.hpp"

#include <cmath>
#include <limits>

namespace cdsim::propagator {

StepPlan resolve_steps(double tf, const IntegratorSpec& spec) {
  if (spec.carrier_resolution < 20)
    throw config_error("integrator.carrierResolution: must be >= 20");

  const double bound = spec.omega_max > 0
                           ? 2.0 * pi / (spec.carrier_resolution * spec.omega_max)
                           : std::numeric_limits<double>::infinity();

  StepPlan plan{};
  if (spec.steps > 0) {
    plan.steps = spec.steps;
  } else if (spec.dt > 0) {
    plan.steps = static_cast<long long>(std::ceil(tf / spec.dt));
  } else {
    if (!(bound < std::numeric_limits<double>::infinity()))
      throw config_error("integrator: need steps, dt, or omegaMax to pick a step");
    plan.steps = static_cast<long long>(std::ceil(tf / bound));
  }
  if (plan.steps < 1) plan.steps = 1;
  if (plan.steps > 200'000'000)
    throw config_error("integrator: step count exceeds sanity limit");

  plan.dt = tf / static_cast<double>(plan.steps);
  if (plan.dt > bound * (1.0 + 1e-12))
    throw step_too_coarse_error("integrator: dt does not resolve the fastest carrier");

  plan.store_every = spec.store_every > 0
                         ? spec.store_every
                         : static_cast<int>(std::max<long long>(1, plan.steps / 1000));
  return plan;
}

std::vector<Eigen::VectorXd> populations(const Trajectory& tr) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(tr.states.size());
  for (const auto& s : tr.states) out.push_back(s.cwiseAbs2());
  return out;
}

std::vector<double> norms(const Trajectory& tr) {
  std::vector<double> out;
  out.reserve(tr.states.size());
  for (const auto& s : tr.states) out.push_back(s.norm());
  return out;
}

double fidelity(const Trajectory& tr, int target_level, bool normalized) {
  if (tr.states.empty()) throw std::invalid_argument("fidelity: empty trajectory");
  const auto& last = tr.states.back();
  if (target_level < 1 || target_level > last.size())
    throw std::invalid_argument("fidelity: target level out of range");
  const double f = std::norm(last(target_level - 1));
  return normalized ? f / last.squaredNorm() : f;
}

std::vector<double> dark_state_overlap(const Trajectory& tr,
                                       const three_level::ThreeLevelParams& p) {
  if (tr.dim() != 3)
    throw std::invalid_argument("dark_state_overlap: three-level trajectory required");

  std::vector<double> out;
  out.reserve(tr.states.size());
  for (std::size_t i = 0; i < tr.states.size(); ++i) {
    const auto d = three_level::dressed_drives(tr.times[i], p);
    const double xi0_sq = std::norm(d.pump.value) + std::norm(d.stokes.value);
    if (xi0_sq == 0.0)
      throw degenerate_dark_error("dark_state_overlap: drives vanish");
    const double xi0 = std::max(std::sqrt(xi0_sq),
                                std::numeric_limits<double>::epsilon() * p.pulses.omega0);
    // <E^_0| = (conj(Ws), 0, -Wp) / Xi_0
    const auto& s = tr.states[i];
    const complexd ip = (std::conj(d.stokes.value) * s(0) - d.pump.value * s(2)) / xi0;
    out.push_back(std::norm(ip) / s.squaredNorm());
  }
  return out;
}

}  // namespace cdsim::propagator
