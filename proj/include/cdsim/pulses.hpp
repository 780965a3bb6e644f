#pragma once

#include "cdsim/types.hpp"

namespace cdsim::pulses {

// Allen-Eberly driving: sech amplitude with tanh-chirped detuning, centered
// at tf/2.
struct AeParams {
  double omega0 = 0;  // peak Rabi amplitude [rad/s]
  double delta = 0;   // chirp scale [rad/s]
  double t0 = 0;      // pulse width [s]
  double tf = 0;      // total duration [s]
};

// Pair of identical Gaussians separated by 2*tau; the Stokes pulse peaks
// before the pump (standard STIRAP ordering).
struct GaussianPairParams {
  double omega0 = 0;  // peak amplitude [rad/s]
  double tau = 0;     // half-delay [s]
  double T = 0;       // width [s]
  double tf = 0;      // total duration [s]
};

void validate(const AeParams& p);
void validate(const GaussianPairParams& p);

struct AeDrive {
  PulseSample rabi;      // Omega_R(t), real-valued
  PulseSample detuning;  // Delta(t), real-valued
};

AeDrive ae_drive(double t, const AeParams& p);

struct GaussianPair {
  PulseSample pump;    // peaks at tf/2 + tau
  PulseSample stokes;  // peaks at tf/2 - tau
};

GaussianPair gaussian_pair(double t, const GaussianPairParams& p);

// Multiplies an RWA envelope by the counter-rotating dressing factor
// 1 + e^{-2 i omega t}, with the full product-rule derivative.
PulseSample dress_counter_rotating(const PulseSample& s, double omega, double t);

}  // namespace cdsim::pulses
