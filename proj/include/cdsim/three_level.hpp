#pragma once

#include "cdsim/pulses.hpp"
#include "cdsim/types.hpp"

namespace cdsim::three_level {

struct ThreeLevelParams {
  double gamma = 0;         // decay rate of |2> [rad/s], >= 0
  double delta_pump = 0;    // Delta_p [rad/s]
  double delta_stokes = 0;  // Delta_s [rad/s]
  double omega_pump = 0;    // pump carrier omega_p [rad/s]
  double omega_stokes = 0;  // Stokes carrier omega_s [rad/s]
  pulses::GaussianPairParams pulses;
  bool counter_rotating = false;
};

void validate(const ThreeLevelParams& p);

// Throws unless Delta_p = Delta_s. The eigensystem and every CD construction
// are written on two-photon resonance; only the bare Hamiltonian accepts
// detuned input (for diagnostics).
void require_two_photon_resonance(const ThreeLevelParams& p);

struct DressedDrives {
  PulseSample pump;    // Omega_bar_p
  PulseSample stokes;  // Omega_bar_s
};

DressedDrives dressed_drives(double t, const ThreeLevelParams& p);

// (1/2) [[0, Wp, 0], [Wp*, 2 Delta_p - i Gamma, Ws], [0, Ws*, 2(Delta_p - Delta_s)]]
Matrix3c hamiltonian(double t, const ThreeLevelParams& p);

// Analytic d/dt of the reference Hamiltonian (detunings and Gamma constant).
Matrix3c hamiltonian_dot(double t, const ThreeLevelParams& p);

// Instantaneous biorthogonal eigensystem on two-photon resonance. Left states
// are normalized so that <E^_m|E_n> = delta_mn exactly; the complex square
// root carries branch continuity along a trajectory through `prev`.
struct Eigensystem3 {
  Vector3c right[3];  // |E_0>, |E_+>, |E_->
  Vector3c left[3];   // |E^_0>, |E^_+>, |E^_->
  complexd eps_plus{}, eps_minus{};          // eigenvalues are eps/2 (E_0 = 0)
  complexd eps_hat_plus{}, eps_hat_minus{};  // of the adjoint Hamiltonian
  double xi0_sq = 0;                         // |Wp|^2 + |Ws|^2, real >= 0
  complexd xi1_sq{}, xi2_sq{};               // eps_+-^2 + xi0^2
  complexd sqrt_disc{};                      // branch-tracked root
  DressedDrives drives;                      // the samples the system was built from
};

Eigensystem3 eigensystem(double t, const ThreeLevelParams& p,
                         const Eigensystem3* prev = nullptr);

// Oblique spectral projectors Pi_j = |E_j><E^_j|, assembled as holomorphic
// rank-1 outer products over Xi^2.
struct ProjectorSet3 {
  Matrix3c pi0, pi1, pi2;
};

ProjectorSet3 projectors(const Eigensystem3& es);

// Authoritative counterdiabatic term: i * sum_{j != k} Pi_j H0dot Pi_k / (E_k - E_j).
Matrix3c cd_projector_formula(double t, const ThreeLevelParams& p,
                              const Eigensystem3& es, const ProjectorSet3& ps,
                              const Matrix3c& h0dot);

// Printed closed form with the A(t)..G(t) coefficient functions; kept as a
// literal cross-check of the projector formula.
Matrix3c cd_closed_form(double t, const ThreeLevelParams& p, const Eigensystem3& es);

// RWA auxiliary driving i*[[0, A, C], [-A, 0, -B], [-C, B, 0]] from the
// undressed pulses.
Matrix3c cd_rwa(double t, const ThreeLevelParams& p);

}  // namespace cdsim::three_level
