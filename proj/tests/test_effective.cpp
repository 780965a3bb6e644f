#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cdsim/effective.hpp"
#include "cdsim/errors.hpp"
#include "cdsim/presets.hpp"
#include "cdsim/propagator.hpp"
#include "cdsim/runner.hpp"
#include "cdsim/units.hpp"

using namespace cdsim;
using namespace cdsim::effective;
using cdsim::units::two_pi_ghz;
using cdsim::units::two_pi_mhz;

namespace {

EffectiveParams fig5_params(Variant v, bool counter_rotating = true) {
  EffectiveParams p;
  p.base.gamma = two_pi_ghz(0.16);
  p.base.delta_pump = two_pi_ghz(2.5);
  p.base.delta_stokes = two_pi_ghz(2.5);
  p.base.omega_pump = two_pi_mhz(100.0);
  p.base.omega_stokes = two_pi_mhz(80.0);
  p.base.counter_rotating = counter_rotating;
  p.base.pulses.omega0 = two_pi_ghz(0.16);
  p.base.pulses.tf = 30e-9;
  p.base.pulses.T = 30e-9 / 6.0;
  p.base.pulses.tau = 30e-9 / 10.0;
  p.variant = v;
  return p;
}

}  // namespace

TEST_CASE("as-printed coupling vanishes for equal pulse magnitudes") {
  EffectiveParams p = fig5_params(Variant::AsPrinted, false);
  p.base.pulses.tau = 0.0;  // pump = stokes at every t
  for (int i = 0; i <= 40; ++i) {
    const auto d = effective_drive(p.base.pulses.tf * i / 40.0, p);
    CHECK(std::abs(d.omega_eff) < 1e-14 * effective_scale(p));
  }
}

TEST_CASE("standard elimination is Hermitian in the lossless RWA case") {
  EffectiveParams p = fig5_params(Variant::StandardElimination, false);
  p.base.gamma = 0.0;
  for (int i = 0; i <= 40; ++i) {
    const Matrix2c h = effective_hamiltonian(p.base.pulses.tf * i / 40.0, p);
    CHECK((h - h.adjoint()).norm() < 1e-14 * std::max(h.norm(), 1.0));
  }
}

TEST_CASE("with the Stokes drive off, the pinned form is the exact elimination") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const double delta = two_pi_ghz(2.5), gamma = two_pi_ghz(0.16);
  const complexd q = 2.0 * delta - iu * gamma;
  for (int draw = 0; draw < 50; ++draw) {
    const PulseSample pump{two_pi_ghz(0.2) * complexd(uni(rng), uni(rng)),
                           two_pi_ghz(20.0) * complexd(uni(rng), uni(rng))};
    const PulseSample stokes{0.0, 0.0};

    const auto d =
        effective_drive_from_samples(pump, stokes, delta, gamma,
                                     Variant::StandardElimination);
    Matrix2c pinned;
    pinned << -0.5 * d.delta_eff, 0.5 * d.omega_eff,
               0.5 * std::conj(d.omega_eff), 0.5 * d.delta_eff;

    // full c2-elimination Hamiltonian at s = 0 and its trace shift
    Matrix2c full;
    full << -std::norm(pump.value) / (2.0 * q), 0.0, 0.0, 0.0;
    const complexd shift = 0.5 * full.trace();

    CHECK((pinned + shift * Matrix2c::Identity() - full).norm() <
          1e-13 * full.norm());

    // the intensity-difference coupling appears in both variants
    const auto ap =
        effective_drive_from_samples(pump, stokes, delta, gamma, Variant::AsPrinted);
    CHECK(std::abs(ap.omega_eff - d.delta_eff) < 1e-15 * std::abs(d.delta_eff));
  }
}

TEST_CASE("effective derivatives match finite differences") {
  for (const Variant v : {Variant::StandardElimination, Variant::AsPrinted}) {
    CAPTURE(v == Variant::AsPrinted);
    const EffectiveParams p = fig5_params(v);
    const double tf = p.base.pulses.tf, h = tf * 1e-8;
    for (int i = 1; i < 500; ++i) {
      const double t = tf * i / 500.0;
      const auto d = effective_drive(t, p);
      const auto lo = effective_drive(t - h, p);
      const auto hi = effective_drive(t + h, p);
      const complexd fd_omega = (hi.omega_eff - lo.omega_eff) / (2.0 * h);
      const complexd fd_delta = (hi.delta_eff - lo.delta_eff) / (2.0 * h);
      const double scale = effective_scale(p) / tf;
      CHECK(std::abs(d.omega_eff_dot - fd_omega) /
                std::max(std::abs(d.omega_eff_dot), scale) <
            1e-6);
      CHECK(std::abs(d.delta_eff_dot - fd_delta) /
                std::max(std::abs(d.delta_eff_dot), scale) <
            1e-6);
    }
  }
}

TEST_CASE("effective_cd: stationary drive gives the zero matrix") {
  EffectiveDrive d;
  d.delta_eff = complexd(3e7, -1e6);
  d.omega_eff = complexd(-2e7, 5e6);
  d.delta_eff_dot = 0.0;
  d.omega_eff_dot = 0.0;
  CHECK(effective_cd_from_drive(d, 1e7).norm() == 0.0);
}

TEST_CASE("effective_cd: Q = 2i Im(...) is purely imaginary") {
  const EffectiveParams p = fig5_params(Variant::StandardElimination);
  for (int i = 1; i < 100; ++i) {
    const auto d = effective_drive(p.base.pulses.tf * i / 100.0, p);
    const complexd q = std::conj(d.omega_eff_dot) * d.omega_eff -
                       d.omega_eff_dot * std::conj(d.omega_eff);
    CHECK(q.real() == 0.0);
  }
}

TEST_CASE("effective_cd raises on M collapse inside the support") {
  EffectiveDrive d;
  d.delta_eff = iu * 1e7;  // Delta^2 = -|Omega|^2 exactly
  d.omega_eff = 1e7;
  d.omega_eff_dot = 1e15;
  d.delta_eff_dot = 1e15;
  CHECK_THROWS_AS(effective_cd_from_drive(d, 1e7), singular_m_error);
}

TEST_CASE("effective_cd support cut returns zero in deep tails") {
  EffectiveDrive d;
  d.delta_eff = 1e-3;  // far below the characteristic scale
  d.omega_eff = 1e-3;
  d.omega_eff_dot = 1.0;
  d.delta_eff_dot = 1.0;
  CHECK(effective_cd_from_drive(d, 1e7).norm() == 0.0);
}

TEST_CASE("M stays bounded away from cancellation over the fig5 run") {
  for (const Variant v : {Variant::StandardElimination, Variant::AsPrinted}) {
    const EffectiveParams p = fig5_params(v);
    const double cut = 1e-8 * effective_scale(p);
    for (int i = 0; i <= 2000; ++i) {
      const auto d = effective_drive(p.base.pulses.tf * i / 2000.0, p);
      const double mag = std::max(std::abs(d.omega_eff), std::abs(d.delta_eff));
      if (mag < cut) continue;  // outside the CD support
      const complexd m = std::norm(d.omega_eff) + d.delta_eff * d.delta_eff;
      CHECK(std::abs(m) > 1e-6 * mag * mag);
    }
  }
}

TEST_CASE("effective system with CD transfers the |3> image population") {
  using namespace cdsim::harness;
  SystemConfig cfg = fig5_effective_config(effective::Variant::StandardElimination);
  cfg.integrator.steps = 20000;
  cfg.integrator.store_every = 0;
  const RunResult res = run_trajectory(cfg);
  CHECK(res.summary.fidelity > 0.9);
}

TEST_CASE("validation warns outside the large-detuning regime") {
  EffectiveParams p = fig5_params(Variant::StandardElimination);
  CHECK_NOTHROW(validate(p));
  p.base.delta_pump = p.base.delta_stokes = two_pi_mhz(100.0);
  CHECK_NOTHROW(validate(p));  // warning only, printed to stderr
}
