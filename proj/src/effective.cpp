#include "cdsim/effective.hpp"

#include <cmath>
#include <iostream>

#include "cdsim/errors.hpp"

namespace cdsim::effective {

namespace {

constexpr double kCdTailCut = 1e-8;

complexd denom_2d_ig(const three_level::ThreeLevelParams& b) {
  return 2.0 * b.delta_pump - iu * b.gamma;
}

}  // namespace

void validate(const EffectiveParams& p) {
  three_level::validate(p.base);
  three_level::require_two_photon_resonance(p.base);
  if (std::abs(denom_2d_ig(p.base)) == 0.0)
    throw config_error("effective: 2*Delta - i*Gamma must not vanish");
  if (std::abs(p.base.delta_pump) < 5.0 * p.base.pulses.omega0)
    std::cerr << "warning: effective model outside the large-detuning regime "
                 "(|Delta| < 5 Omega_0)\n";
}

EffectiveDrive effective_drive_from_samples(const PulseSample& pump,
                                            const PulseSample& stokes, double delta,
                                            double gamma, Variant v) {
  const complexd q = 2.0 * delta - iu * gamma;
  if (std::abs(q) == 0.0)
    throw numeric_error("effective: 2*Delta - i*Gamma vanished");

  const complexd wp = pump.value, ws = stokes.value;
  const complexd wpd = pump.derivative, wsd = stokes.derivative;
  // d/dt |w|^2 = 2 Re(conj(w) w_dot)
  const double dnp = 2.0 * (std::conj(wp) * wpd).real();
  const double dns = 2.0 * (std::conj(ws) * wsd).real();

  EffectiveDrive d;
  if (v == Variant::AsPrinted) {
    d.delta_eff = -wp * wp / q;
    d.delta_eff_dot = -2.0 * wp * wpd / q;
    d.omega_eff = (std::norm(wp) - std::norm(ws)) / (2.0 * q);
    d.omega_eff_dot = (dnp - dns) / (2.0 * q);
  } else {
    d.omega_eff = -wp * ws / q;
    d.omega_eff_dot = -(wpd * ws + wp * wsd) / q;
    d.delta_eff = (std::norm(wp) - std::norm(ws)) / (2.0 * q);
    d.delta_eff_dot = (dnp - dns) / (2.0 * q);
  }
  return d;
}

EffectiveDrive effective_drive(double t, const EffectiveParams& p) {
  three_level::require_two_photon_resonance(p.base);
  const auto dr = three_level::dressed_drives(t, p.base);
  return effective_drive_from_samples(dr.pump, dr.stokes, p.base.delta_pump,
                                      p.base.gamma, p.variant);
}

Matrix2c effective_hamiltonian(double t, const EffectiveParams& p) {
  const auto d = effective_drive(t, p);
  Matrix2c h;
  h << -0.5 * d.delta_eff, 0.5 * d.omega_eff,
        0.5 * std::conj(d.omega_eff), 0.5 * d.delta_eff;
  return h;
}

double effective_scale(const EffectiveParams& p) {
  return p.base.pulses.omega0 * p.base.pulses.omega0 / std::abs(denom_2d_ig(p.base));
}

Matrix2c effective_cd_from_drive(const EffectiveDrive& d, double scale) {
  const double mag = std::max(std::abs(d.omega_eff), std::abs(d.delta_eff));
  if (mag < kCdTailCut * scale) return Matrix2c::Zero();

  const complexd m_val = std::norm(d.omega_eff) + d.delta_eff * d.delta_eff;
  if (std::abs(m_val) < 1e-6 * mag * mag)
    throw singular_m_error("effective_cd: |Omega_eff|^2 + Delta_eff^2 collapsed");

  const complexd pt = d.omega_eff_dot * d.delta_eff - d.delta_eff_dot * d.omega_eff;
  const complexd qt = std::conj(d.omega_eff_dot) * d.omega_eff -
                      d.omega_eff_dot * std::conj(d.omega_eff);

  Matrix2c m;
  m << 0.0, pt,
       -std::conj(pt), qt;
  return (iu / (2.0 * m_val)) * m;
}

Matrix2c effective_cd(double t, const EffectiveParams& p) {
  return effective_cd_from_drive(effective_drive(t, p), effective_scale(p));
}

}  // namespace cdsim::effective
