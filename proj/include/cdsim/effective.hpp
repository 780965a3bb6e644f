#pragma once

#include "cdsim/three_level.hpp"
#include "cdsim/types.hpp"

namespace cdsim::effective {

// Two readings of the printed effective couplings (the printed equation looks
// role-swapped relative to standard adiabatic elimination, so both are kept
// and an oracle run against the full three-level model picks the default).
enum class Variant {
  AsPrinted,            // Delta_eff = -Wp^2/(2D-iG), Omega_eff = (|Wp|^2-|Ws|^2)/(4D-2iG)
  StandardElimination,  // Omega_eff = -Wp Ws/(2D-iG), Delta_eff = (|Wp|^2-|Ws|^2)/(4D-2iG)
};

struct EffectiveParams {
  three_level::ThreeLevelParams base;
  Variant variant = Variant::StandardElimination;
};

// Warns on stderr when the single-photon detuning is not large against the
// drive (|Delta| < 5 Omega_0); elimination quality degrades there.
void validate(const EffectiveParams& p);

struct EffectiveDrive {
  complexd delta_eff{}, omega_eff{};
  complexd delta_eff_dot{}, omega_eff_dot{};
};

EffectiveDrive effective_drive(double t, const EffectiveParams& p);

// Test seam: same computation from explicit dressed samples.
EffectiveDrive effective_drive_from_samples(const PulseSample& pump,
                                            const PulseSample& stokes, double delta,
                                            double gamma, Variant v);

// (1/2) [[-Delta_eff, Omega_eff], [Omega_eff*, Delta_eff]]
Matrix2c effective_hamiltonian(double t, const EffectiveParams& p);

// Counterdiabatic term (i/(2M)) [[0, P], [-P*, Q]]. Returns zero outside the
// drive support; raises singular-M on genuine cancellation inside it.
Matrix2c effective_cd(double t, const EffectiveParams& p);

// Same construction from an explicit drive; `scale` is the characteristic
// coupling magnitude used for the support cut.
Matrix2c effective_cd_from_drive(const EffectiveDrive& d, double scale);

// Characteristic magnitude of the effective couplings, Omega_0^2/|2 Delta - i Gamma|.
double effective_scale(const EffectiveParams& p);

}  // namespace cdsim::effective
