#include "cdsim/pulses.hpp"

#include <cmath>

#include "cdsim/errors.hpp"

namespace cdsim::pulses {

void validate(const AeParams& p) {
  if (!(p.omega0 > 0)) throw config_error("pulse.omega0: must be > 0");
  if (!(p.t0 > 0)) throw config_error("pulse.t0: must be > 0");
  if (!(p.tf > 0)) throw config_error("pulse.tf: must be > 0");
  if (!std::isfinite(p.delta)) throw config_error("pulse.delta: must be finite");
}

void validate(const GaussianPairParams& p) {
  if (!(p.omega0 > 0)) throw config_error("pulse.omega0: must be > 0");
  if (!(p.T > 0)) throw config_error("pulse.T: must be > 0");
  if (!(p.tf > 0)) throw config_error("pulse.tf: must be > 0");
  if (!(p.tau >= 0)) throw config_error("pulse.tau: must be >= 0");
}

AeDrive ae_drive(double t, const AeParams& p) {
  const double rate = pi / (2.0 * p.t0);
  const double u = rate * (t - 0.5 * p.tf);
  const double sech = 1.0 / std::cosh(u);
  const double tanh = std::tanh(u);

  AeDrive d;
  d.rabi.value = p.omega0 * sech;
  d.rabi.derivative = -p.omega0 * rate * sech * tanh;
  const double amp = 2.0 * p.delta * p.delta * p.t0 / pi;
  d.detuning.value = amp * tanh;
  d.detuning.derivative = amp * rate * sech * sech;  // = delta^2 sech^2
  return d;
}

GaussianPair gaussian_pair(double t, const GaussianPairParams& p) {
  const auto sample = [&](double center) {
    const double x = (t - center) / p.T;
    const double v = p.omega0 * std::exp(-x * x);
    return PulseSample{v, -2.0 * x / p.T * v};
  };
  GaussianPair g;
  g.pump = sample(0.5 * p.tf + p.tau);
  g.stokes = sample(0.5 * p.tf - p.tau);
  return g;
}

PulseSample dress_counter_rotating(const PulseSample& s, double omega, double t) {
  const complexd cr = std::exp(-2.0 * iu * omega * t);
  PulseSample out;
  out.value = s.value * (1.0 + cr);
  out.derivative = s.derivative * (1.0 + cr) + s.value * (-2.0 * iu * omega) * cr;
  return out;
}

}  // namespace cdsim::pulses
