#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "cdsim/errors.hpp"
#include "cdsim/three_level.hpp"
#include "cdsim/types.hpp"

namespace cdsim::propagator {

enum class Method { RK4Fixed, RK4Adaptive };

// RK4 stepping. Fixed (default, used by every preset — reproducibility beats
// adaptivity there): `steps` or `dt` pins the grid; with both zero the step
// comes from the carrier bound dt <= 2 pi / (carrier_resolution * omega_max),
// and a supplied step violating that bound raises step_too_coarse. Adaptive:
// `dt` is the relative local error tolerance, the carrier bound caps the
// step, and the accepted grid is non-uniform.
struct IntegratorSpec {
  Method method = Method::RK4Fixed;
  long long steps = 0;
  double dt = 0;               // requested step [s], or adaptive tolerance
  int carrier_resolution = 20;  // minimum steps per fastest period, >= 20
  double omega_max = 0;        // fastest angular frequency in H(t) [rad/s]
  int store_every = 0;         // 0: aim for ~1000 stored rows
};

struct StepPlan {
  long long steps;
  double dt;
  int store_every;
};

StepPlan resolve_steps(double tf, const IntegratorSpec& spec);

struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXcd> states;

  int dim() const { return states.empty() ? 0 : static_cast<int>(states.front().size()); }
};

namespace detail {

template <typename Vec, typename F>
Vec rk4_step(const F& deriv, double t, double dt, const Vec& y) {
  const Vec k1 = deriv(t, y);
  const Vec k2 = deriv(t + 0.5 * dt, y + (0.5 * dt) * k1);
  const Vec k3 = deriv(t + 0.5 * dt, y + (0.5 * dt) * k2);
  const Vec k4 = deriv(t + dt, y + dt * k3);
  return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace detail

// Integrates i dpsi/dt = H(t) psi without renormalizing (the non-unitary
// decay is physical). The builder is invoked in monotone time order, so it
// may carry branch-continuity state for one trajectory.
template <int N>
Trajectory evolve(const std::function<Eigen::Matrix<complexd, N, N>(double)>& h,
                  const Eigen::Matrix<complexd, N, 1>& psi0, double tf,
                  const IntegratorSpec& spec) {
  if (!(tf > 0)) throw std::invalid_argument("evolve: tf must be > 0");
  if (std::abs(psi0.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("evolve: psi0 must be normalized");

  using Vec = Eigen::Matrix<complexd, N, 1>;
  Vec psi = psi0;
  const auto deriv = [&h](double t, const Vec& y) -> Vec { return -iu * (h(t) * y); };

  Trajectory tr;
  tr.times.push_back(0.0);
  tr.states.push_back(psi);

  if (spec.method == Method::RK4Adaptive) {
    if (spec.carrier_resolution < 20)
      throw config_error("integrator.carrierResolution: must be >= 20");
    const double tol = spec.dt > 0 ? spec.dt : 1e-10;
    const double max_dt =
        spec.omega_max > 0 ? 2.0 * pi / (spec.carrier_resolution * spec.omega_max)
                           : tf / 100.0;
    double t = 0.0, dt = std::min(max_dt, tf / 100.0);
    long long accepts = 0;
    const int stride = spec.store_every > 0 ? spec.store_every : 1;
    while (t < tf) {
      dt = std::min(dt, tf - t);
      // step-doubling error estimate: one full step vs two half steps
      const Vec full = detail::rk4_step(deriv, t, dt, psi);
      const Vec half = detail::rk4_step(
          deriv, t + 0.5 * dt, 0.5 * dt, detail::rk4_step(deriv, t, 0.5 * dt, psi));
      const double err = (full - half).norm() / (15.0 * std::max(psi.norm(), 1e-300));
      if (err <= tol || dt <= 16.0 * tf * std::numeric_limits<double>::epsilon()) {
        t += dt;
        psi = half;  // the more accurate solution
        if (!psi.allFinite())
          throw non_finite_error("evolve: non-finite amplitude at t = " +
                                 std::to_string(t));
        ++accepts;
        if (accepts % stride == 0 || t >= tf) {
          tr.times.push_back(t);
          tr.states.push_back(psi);
        }
      }
      const double grow = err > 0 ? 0.9 * std::pow(tol / err, 0.2) : 4.0;
      dt = std::min(max_dt, dt * std::clamp(grow, 0.2, 4.0));
      if (accepts > 100'000'000)
        throw numeric_error("evolve: adaptive step count exceeds sanity limit");
    }
    return tr;
  }

  const StepPlan plan = resolve_steps(tf, spec);
  tr.times.reserve(static_cast<std::size_t>(plan.steps / plan.store_every) + 2);
  tr.states.reserve(tr.times.capacity());

  for (long long i = 0; i < plan.steps; ++i) {
    const double t = (static_cast<double>(i) * tf) / static_cast<double>(plan.steps);
    const double t_next =
        (static_cast<double>(i + 1) * tf) / static_cast<double>(plan.steps);
    psi = detail::rk4_step(deriv, t, t_next - t, psi);

    if (!psi.allFinite())
      throw non_finite_error("evolve: non-finite amplitude at t = " +
                             std::to_string(t_next));

    if ((i + 1) % plan.store_every == 0 || i + 1 == plan.steps) {
      tr.times.push_back(t_next);
      tr.states.push_back(psi);
    }
  }
  return tr;
}

// P_i(t) = |c_i(t)|^2, no normalization.
std::vector<Eigen::VectorXd> populations(const Trajectory& tr);

std::vector<double> norms(const Trajectory& tr);

// F = |<target|Psi(tf)>|^2 on the raw final state; `target_level` is 1-based.
// The normalized variant exists behind the flag and is never used by the
// acceptance suite.
double fidelity(const Trajectory& tr, int target_level, bool normalized = false);

// |<E^_0(t)|psi(t)>|^2 / ||psi(t)||^2 on the stored grid.
std::vector<double> dark_state_overlap(const Trajectory& tr,
                                       const three_level::ThreeLevelParams& p);

}  // namespace cdsim::propagator
